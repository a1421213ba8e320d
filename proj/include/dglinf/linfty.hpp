#pragma once

// L∞-algebras as codifferentials on the reduced symmetric coalgebra of V[1],
// L∞-morphisms as coalgebra morphisms, and the induced Maurer-Cartan theory.
//
// Conventions: (V[1])^i = V^{i+1}; brackets q_k : ⊙^k V[1] -> V[1] have
// degree +1; morphism components f_k have degree 0. A dgla L becomes an L∞
// algebra with q_1 = -d, q_2(x⊙y) = (-1)^{|x|}[x,y] (|x| the degree in L).

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dglinf/artin.hpp"
#include "dglinf/cohomology.hpp"
#include "dglinf/dgla.hpp"
#include "dglinf/symcoalg.hpp"

namespace dglinf {

/// One entry of a bracket or morphism table in input order: the value on
/// inputs[0]⊙inputs[1]⊙… (indices into V).
struct MultilinearEntry {
  std::vector<std::size_t> inputs;
  Vector value;
};

class LInftyStructure {
 public:
  using Table = std::map<SymWord, Vector>;

  LInftyStructure() = default;

  /// `brackets[k-1]` holds q_k on canonical words.
  LInftyStructure(GradedSpace V, std::vector<Table> brackets) : basis_(V), brackets_(std::move(brackets)) {
    while (!brackets_.empty() && brackets_.back().empty()) brackets_.pop_back();
    for (std::size_t k = 0; k < brackets_.size(); ++k)
      for (const auto& [w, v] : brackets_[k]) {
        if (w.weight() != k + 1) throw InvalidInput("bracket table: word weight does not match arity");
        auto [s, canon] = basis_.normalize(w.factors);
        if (s != 1 || canon != w) throw InvalidInput("bracket table: word not in canonical form");
        const int deg = basis_.degree(w) + 1;
        for (const auto& [i, c] : v)
          if (basis_.degree(i) != deg) {
            throw InvalidInput("q_" + std::to_string(k + 1) + " is not of degree +1 on " + basis_.word_name(w));
          }
      }
  }

  /// Builds the tables from values given on ordered inputs, normalizing with
  /// Koszul signs. Two entries on the same ⊙-monomial must agree (graded
  /// symmetry), and entries on vanishing monomials must be zero.
  static LInftyStructure from_entries(GradedSpace V, const std::vector<MultilinearEntry>& entries) {
    ShiftedBasis B(V);
    std::vector<Table> tables;
    for (const auto& e : entries) {
      if (e.inputs.empty()) throw InvalidInput("bracket entry with no inputs");
      for (auto i : e.inputs)
        if (i >= V.dim()) throw InvalidInput("bracket entry index out of range");
      auto [s, word] = B.normalize(e.inputs);
      if (s == 0) {
        if (!e.value.empty()) {
          throw InvalidInput("non-symmetric bracket: nonzero value on vanishing word " +
                             B.word_name(SymWord{e.inputs}));
        }
        continue;
      }
      if (tables.size() < e.inputs.size()) tables.resize(e.inputs.size());
      Vector v = scaled(e.value, s);
      auto [it, inserted] = tables[e.inputs.size() - 1].try_emplace(word, v);
      if (!inserted && it->second != v) {
        throw InvalidInput("non-symmetric bracket: inconsistent values on " + B.word_name(word));
      }
    }
    for (auto& t : tables) std::erase_if(t, [](const auto& kv) { return kv.second.empty(); });
    return LInftyStructure(std::move(V), std::move(tables));
  }

  const GradedSpace& space() const { return basis_.space(); }
  const ShiftedBasis& basis() const { return basis_; }
  std::size_t max_arity() const { return brackets_.size(); }
  const std::vector<Table>& tables() const { return brackets_; }
  bool has_arity(std::size_t k) const { return k >= 1 && k <= brackets_.size() && !brackets_[k - 1].empty(); }

  /// q_k(w) with k = weight of w.
  const Vector& bracket(const SymWord& w) const {
    static const Vector kZero;
    const std::size_t k = w.weight();
    if (k == 0 || k > brackets_.size()) return kZero;
    auto it = brackets_[k - 1].find(w);
    return it == brackets_[k - 1].end() ? kZero : it->second;
  }

  /// q = Σ q_k applied to an element of the symmetric coalgebra.
  Vector bracket(const SymTensor& x) const {
    Vector out;
    for (const auto& [w, c] : x) add_scaled(out, bracket(w), c);
    return out;
  }

  /// q_1 as a graded map of degree +1 on V[1].
  GradedMap linear_part() const {
    GradedSpace shifted = space().shifted(1);
    std::vector<Vector> cols(space().dim());
    for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = bracket(SymWord{{i}});
    return GradedMap(shifted, shifted, 1, std::move(cols));
  }

  bool operator==(const LInftyStructure& o) const {
    return space() == o.space() && brackets_ == o.brackets_;
  }

 private:
  ShiftedBasis basis_;
  std::vector<Table> brackets_;
};

/// q_1 = -d, q_2(x⊙y) = (-1)^{|x|}[x,y], q_k = 0 for k >= 3. The data is
/// not validated.
inline LInftyStructure linfty_from_dgla_data(const DglaData& L) {
  const std::size_t n = L.space.dim();
  ShiftedBasis B(L.space);
  std::vector<LInftyStructure::Table> t(2);
  for (std::size_t i = 0; i < n; ++i) {
    Vector v = scaled(L.d.column(i), -1);
    if (!v.empty()) t[0].emplace(SymWord{{i}}, std::move(v));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (B.rank(i) > B.rank(j)) continue;
      if (i == j && B.odd(i)) continue;
      Vector v = scaled(L.bracket.at(i, j), sign_pow(L.space.degree(i)));
      if (!v.empty()) t[1].emplace(SymWord{{i, j}}, std::move(v));
    }
  return LInftyStructure(L.space, std::move(t));
}

inline LInftyStructure linfty_from_dgla(const Dgla& L) { return linfty_from_dgla_data(L.data()); }

/// The coderivation Q of S̄(V[1]) extending q:
/// Q(v_1⊙…⊙v_n) = Σ_k Σ_{σ∈S(k,n-k)} ε(σ) q_k(v_σ(1..k)) ⊙ v_σ(k+1..n).
class Coderivation {
 public:
  explicit Coderivation(const LInftyStructure& S) : S_(&S) {}

  SymTensor operator()(const SymWord& w) const {
    SymTensor out;
    const auto& B = S_->basis();
    for_each_unshuffle(B, w, true, [&](const auto& first, const auto& rest, int sign) {
      if (!S_->has_arity(first.size())) return;
      const Vector& q = S_->bracket(sub_word(w, first));
      if (q.empty()) return;
      for (const auto& [word, c] : sym_product(B, q, sub_word(w, rest))) add_term(out, word, c * sign);
    });
    return out;
  }

  SymTensor operator()(const SymTensor& x) const {
    SymTensor out;
    for (const auto& [w, c] : x)
      for (const auto& [u, v] : (*this)(w)) add_term(out, u, v * c);
    return out;
  }

  const LInftyStructure& structure() const { return *S_; }

 private:
  const LInftyStructure* S_;
};

inline Coderivation coderivation_extend(const LInftyStructure& S) { return Coderivation(S); }

/// Failure witness for coalgebra-level checks.
struct WordCheck {
  bool ok = true;
  std::string check;
  SymWord word;
  std::string word_name;
  Vector discrepancy;
  explicit operator bool() const { return ok; }
};

/// Verifies the coLeibniz rule Δ∘Q = (Q⊗1 + 1⊗Q)∘Δ on all words up to the
/// weight. Q is odd, so (1⊗Q)(a⊗b) = (-1)^{|a|} a⊗Q(b).
inline bool check_coleibniz(const Coderivation& Q, std::size_t weight) {
  const auto& B = Q.structure().basis();
  for (const auto& w : B.words_up_to(weight)) {
    SymTensor2 lhs = sym_coproduct(B, Q(w));
    SymTensor2 rhs;
    for (const auto& [ab, c] : sym_coproduct(B, w)) {
      const auto& [a, b] = ab;
      for (const auto& [qa, ca] : Q(a)) add_term(rhs, std::make_pair(qa, b), c * ca);
      const int s = sign_pow(B.degree(a));
      for (const auto& [qb, cb] : Q(b)) add_term(rhs, std::make_pair(a, qb), c * cb * s);
    }
    if (lhs != rhs) return false;
  }
  return true;
}

/// Q∘Q = 0 on all basis words of weight <= `weight` (checked through the
/// projection q∘Q, which determines the coderivation Q∘Q).
inline WordCheck check_codifferential(const LInftyStructure& S, std::size_t weight) {
  Coderivation Q(S);
  for (const auto& w : S.basis().words_up_to(weight)) {
    Vector v = S.bracket(Q(w));
    if (!v.empty()) return WordCheck{false, "codifferential", w, S.basis().word_name(w), v};
  }
  return WordCheck{};
}

class LInftyMorphism {
 public:
  /// f_k on canonical source words (k = weight); must be degree 0.
  using Component = std::function<Vector(const SymWord&)>;

  LInftyMorphism(LInftyStructure source, LInftyStructure target, std::size_t max_arity, Component f)
      : source_(std::move(source)), target_(std::move(target)), max_arity_(max_arity), f_(std::move(f)) {}

  /// Table-backed morphism; entries are normalized like bracket entries.
  static LInftyMorphism from_entries(LInftyStructure source, LInftyStructure target,
                                     const std::vector<MultilinearEntry>& entries) {
    const ShiftedBasis& B = source.basis();
    std::map<SymWord, Vector> table;
    std::size_t arity = 0;
    for (const auto& e : entries) {
      auto [s, word] = B.normalize(e.inputs);
      if (s == 0) {
        if (!e.value.empty()) throw InvalidInput("non-symmetric morphism component on " + B.word_name(SymWord{e.inputs}));
        continue;
      }
      const int deg = B.degree(word);
      for (const auto& [i, c] : e.value)
        if (target.basis().degree(i) != deg) throw InvalidInput("morphism component is not of degree 0 on " + B.word_name(word));
      Vector v = scaled(e.value, s);
      auto [it, inserted] = table.try_emplace(word, v);
      if (!inserted && it->second != v) throw InvalidInput("non-symmetric morphism component on " + B.word_name(word));
      arity = std::max(arity, word.weight());
    }
    auto shared = std::make_shared<const std::map<SymWord, Vector>>(std::move(table));
    return LInftyMorphism(std::move(source), std::move(target), arity, [shared](const SymWord& w) {
      auto it = shared->find(w);
      return it == shared->end() ? Vector{} : it->second;
    });
  }

  const LInftyStructure& source() const { return source_; }
  const LInftyStructure& target() const { return target_; }
  std::size_t max_arity() const { return max_arity_; }
  Vector component(const SymWord& w) const {
    if (w.weight() == 0 || w.weight() > max_arity_) return {};
    return f_(w);
  }

 private:
  LInftyStructure source_;
  LInftyStructure target_;
  std::size_t max_arity_;
  Component f_;
};

namespace detail {

/// Memoizing wrapper around a morphism's components for one computation.
class ComponentCache {
 public:
  explicit ComponentCache(const LInftyMorphism& f) : f_(f) {}
  const Vector& operator()(const SymWord& w) {
    auto it = cache_.find(w);
    if (it == cache_.end()) it = cache_.emplace(w, f_.component(w)).first;
    return it->second;
  }

 private:
  const LInftyMorphism& f_;
  std::map<SymWord, Vector> cache_;
};

/// Calls fn(blocks, sign) for each set partition of positions {0..n-1}
/// (blocks ordered by smallest element).
template <class Fn>
void for_each_set_partition(const ShiftedBasis& B, const SymWord& w, Fn&& fn) {
  const std::size_t n = w.weight();
  std::vector<std::vector<std::size_t>> blocks;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      std::vector<std::size_t> perm;
      for (const auto& b : blocks) perm.insert(perm.end(), b.begin(), b.end());
      fn(blocks, B.reorder_sign(w, perm));
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(pos);
      self(self, pos + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({pos});
    self(self, pos + 1);
    blocks.pop_back();
  };
  rec(rec, 0);
}

template <class Components>
SymTensor extend_with(const ShiftedBasis& src, const ShiftedBasis& tgt, Components& f, const SymWord& w,
                      const std::function<bool(std::size_t)>& want_weight) {
  SymTensor out;
  for_each_set_partition(src, w, [&](const auto& blocks, int sign) {
    if (!want_weight(blocks.size())) return;
    std::vector<Vector> values;
    values.reserve(blocks.size());
    for (const auto& b : blocks) {
      const Vector& v = f(sub_word(w, b));
      if (v.empty()) return;
      values.push_back(v);
    }
    std::vector<const Vector*> ptrs;
    for (const auto& v : values) ptrs.push_back(&v);
    for (const auto& [word, c] : sym_product(tgt, ptrs)) add_term(out, word, c * sign);
  });
  return out;
}

}  // namespace detail

/// F = Σ_n (1/n!) f^{⊙n} ∘ π ∘ Δ^{n-1}, evaluated on one word. The n!
/// orderings of each set partition collapse, so
/// F(v_1⊙…⊙v_m) = Σ_{partitions {B_1..B_n}} ε f(B_1)⊙…⊙f(B_n).
inline SymTensor morphism_extend(const LInftyMorphism& f, const SymWord& w) {
  detail::ComponentCache cache(f);
  return detail::extend_with(f.source().basis(), f.target().basis(), cache, w, [](std::size_t) { return true; });
}

/// Verifies (F⊗F)∘Δ = Δ∘F on all words up to the weight.
inline bool check_comorphism(const LInftyMorphism& f, std::size_t weight) {
  const auto& B = f.source().basis();
  const auto& T = f.target().basis();
  for (const auto& w : B.words_up_to(weight)) {
    SymTensor2 lhs;
    for (const auto& [ab, c] : sym_coproduct(B, w)) {
      SymTensor fa = morphism_extend(f, ab.first);
      SymTensor fb = morphism_extend(f, ab.second);
      for (const auto& [x, cx] : fa)
        for (const auto& [y, cy] : fb) add_term(lhs, std::make_pair(x, y), c * cx * cy);
    }
    SymTensor2 rhs = sym_coproduct(T, morphism_extend(f, w));
    if (lhs != rhs) return false;
  }
  return true;
}

/// Σ_a f_a ∘ Q^a_n = Σ_a q̂_a ∘ F^a_n on all source words of weight <= `weight`.
inline WordCheck check_linfty_morphism(const LInftyMorphism& f, std::size_t weight) {
  const auto& S = f.source();
  const auto& T = f.target();
  Coderivation Q(S);
  detail::ComponentCache cache(f);
  auto want = [&T](std::size_t a) { return T.has_arity(a); };
  for (const auto& w : S.basis().words_up_to(weight)) {
    Vector lhs;
    for (const auto& [u, c] : Q(w)) add_scaled(lhs, cache(u), c);
    Vector rhs = T.bracket(detail::extend_with(S.basis(), T.basis(), cache, w, want));
    if (lhs != rhs) return WordCheck{false, "morphism", w, S.basis().word_name(w), lhs - rhs};
  }
  return WordCheck{};
}

/// x^{⊙n}/n! for x ∈ V[1]^0 ⊗ m_A, as word -> coefficient in A. Every factor
/// of x is even, so each multiset of terms {x_j^{k_j}} contributes
/// Π c_j^{k_j}/k_j!.
inline std::map<SymWord, AElement> divided_power(const MVector& x, std::size_t n, const ShiftedBasis& B,
                                                 const ArtinAlgebra& A) {
  struct Term {
    Monomial m;
    std::size_t index;
    Rational c;
  };
  std::vector<Term> terms;
  for (const auto& [m, v] : x)
    for (const auto& [i, c] : v) {
      if (B.odd(i)) throw InvalidInput("divided_power: element is not of even degree in V[1]");
      terms.push_back({m, i, c});
    }
  std::map<SymWord, AElement> out;
  std::vector<std::size_t> seq;
  auto rec = [&](auto&& self, std::size_t from, const Monomial& mon, const Rational& coeff) -> void {
    if (seq.size() == n) {
      auto [s, word] = B.normalize(seq);
      if (s == 0) return;
      auto& slot = out[word];
      slot[mon] += coeff * s;
      if (slot[mon] == 0) slot.erase(mon);
      if (slot.empty()) out.erase(word);
      return;
    }
    for (std::size_t j = from; j < terms.size(); ++j) {
      // take k >= 1 copies of term j
      Monomial cur = mon;
      Rational c = coeff;
      std::size_t k = 0;
      while (seq.size() < n) {
        auto next = A.multiply(cur, terms[j].m);
        if (!next) break;
        cur = *next;
        ++k;
        c = c * terms[j].c / static_cast<long>(k);
        seq.push_back(terms[j].index);
        self(self, j + 1, cur, c);
      }
      seq.resize(seq.size() - k);
    }
  };
  if (n == 0) {
    out[SymWord{}][A.unit()] = 1;
    return out;
  }
  rec(rec, 0, A.unit(), Rational(1));
  return out;
}

/// Σ_words value(word) ⊗ coefficient, for word-indexed A-coefficients.
template <class Eval>
MVector contract(const std::map<SymWord, AElement>& p, Eval&& eval) {
  MVector out;
  for (const auto& [w, coeffs] : p) {
    const Vector& v = eval(w);
    if (v.empty()) continue;
    for (const auto& [m, c] : coeffs) add_scaled(out, m, v, c);
  }
  return out;
}

/// Σ_{n>=1} q_n(x^{⊙n})/n! for x ∈ V[1]^0 ⊗ m_A.
inline MVector linfty_mc_residual(const MVector& x, const LInftyStructure& S, const ArtinAlgebra& A) {
  require_in_max_ideal(x, S.space(), A, 1, "linfty_mc_residual");
  MVector out;
  const std::size_t top = std::min<std::size_t>(S.max_arity(), static_cast<std::size_t>(A.nilpotency_order() - 1));
  for (std::size_t n = 1; n <= top; ++n) {
    if (!S.has_arity(n)) continue;
    add_scaled(out, contract(divided_power(x, n, S.basis(), A), [&](const SymWord& w) -> const Vector& {
                 return S.bracket(w);
               }),
               1);
  }
  return out;
}

inline bool is_linfty_mc(const MVector& x, const LInftyStructure& S, const ArtinAlgebra& A) {
  return linfty_mc_residual(x, S, A).empty();
}

/// MC(f)(x) = Σ_{n>=1} f_n(x^{⊙n})/n!. Throws if x is not MC in the source.
inline MVector pushforward_mc(const LInftyMorphism& f, const MVector& x, const ArtinAlgebra& A) {
  if (!is_linfty_mc(x, f.source(), A)) throw InvalidInput("pushforward_mc: input is not a Maurer-Cartan element");
  detail::ComponentCache cache(f);
  MVector out;
  const std::size_t top = std::min<std::size_t>(f.max_arity(), static_cast<std::size_t>(A.nilpotency_order() - 1));
  for (std::size_t n = 1; n <= top; ++n)
    add_scaled(out, contract(divided_power(x, n, f.source().basis(), A), cache), 1);
  return out;
}

/// z(t,dt) = Σ_i t^i (u_i + dt·w_i) with u_i ∈ V[1]^0⊗m_A, w_i ∈ V[1]^{-1}⊗m_A.
struct PolyPath {
  std::vector<MVector> u;
  std::vector<MVector> w;

  MVector at_zero() const { return u.empty() ? MVector{} : u.front(); }
  MVector at_one() const {
    MVector out;
    for (const auto& c : u) add_scaled(out, c, 1);
    return out;
  }
};

struct HomotopyCheck {
  bool ok = true;
  std::string failure;  // "endpoint-0", "endpoint-1", "mc-form" or "mc-dt"
  explicit operator bool() const { return ok; }
};

namespace detail {

/// A ⊗ Q[t]/(t^bound) with t appended as the last variable.
inline ArtinAlgebra with_time(const ArtinAlgebra& A, int bound) {
  std::set<Monomial> mons;
  for (const auto& m : A.monomials())
    for (int e = 0; e < bound; ++e) {
      Monomial x = m;
      x.push_back(e);
      mons.insert(x);
    }
  auto vars = A.variables();
  vars.push_back("t#");
  return ArtinAlgebra::from_monomials(std::move(vars), std::move(mons));
}

inline MVector embed_time(const std::vector<MVector>& coeffs) {
  MVector out;
  for (std::size_t e = 0; e < coeffs.size(); ++e)
    for (const auto& [m, v] : coeffs[e]) {
      Monomial x = m;
      x.push_back(static_cast<int>(e));
      add_scaled(out, x, v, 1);
    }
  return out;
}

}  // namespace detail

/// Checks z(0) = x, z(1) = y and the MC equation in V[t,dt]. Writing
/// z = u(t) + dt·w(t), the MC equation splits into
///   Σ_n q_n(u^{⊙n})/n! = 0   and   -u' - Σ_{n>=1} q_n(w⊙u^{⊙(n-1)})/(n-1)! = 0,
/// using q_1 = -d_dR + q_1 on the polynomial forms and Koszul signs for dt.
inline HomotopyCheck verify_homotopy_witness(const PolyPath& z, const MVector& x, const MVector& y,
                                             const LInftyStructure& S, const ArtinAlgebra& A) {
  for (const auto& c : z.u) require_in_max_ideal(c, S.space(), A, 1, "homotopy witness (u)");
  for (const auto& c : z.w) require_in_max_ideal(c, S.space(), A, 0, "homotopy witness (dt part)");
  if (z.at_zero() != x) return HomotopyCheck{false, "endpoint-0"};
  if (z.at_one() != y) return HomotopyCheck{false, "endpoint-1"};

  const int N = A.nilpotency_order();
  const int du = static_cast<int>(z.u.size()), dw = static_cast<int>(z.w.size());
  const ArtinAlgebra At = detail::with_time(A, N * (du + dw) + 2);
  const MVector u = detail::embed_time(z.u);
  const MVector w = detail::embed_time(z.w);
  const auto& B = S.basis();
  const std::size_t top = std::min<std::size_t>(S.max_arity(), static_cast<std::size_t>(N - 1));

  MVector form;
  for (std::size_t n = 1; n <= top; ++n)
    add_scaled(form, contract(divided_power(u, n, B, At), [&](const SymWord& s) -> const Vector& { return S.bracket(s); }), 1);
  if (!form.empty()) return HomotopyCheck{false, "mc-form"};

  MVector dt_part;
  for (const auto& [m, v] : u) {  // -u'
    const int e = m.back();
    if (e == 0) continue;
    Monomial m2 = m;
    --m2.back();
    add_scaled(dt_part, m2, v, -e);
  }
  for (std::size_t n = 1; n <= top; ++n) {
    for (const auto& [word, coeffs] : divided_power(u, n - 1, B, At)) {
      for (const auto& [mw, vw] : w)
        for (const auto& [i, cw] : vw) {
          std::vector<std::size_t> seq{i};
          seq.insert(seq.end(), word.factors.begin(), word.factors.end());
          auto [s, canon] = B.normalize(seq);
          if (s == 0) continue;
          const Vector& q = S.bracket(canon);
          if (q.empty()) continue;
          for (const auto& [m, c] : coeffs) {
            auto prod = At.multiply(mw, m);
            if (prod) add_scaled(dt_part, *prod, q, -cw * c * s);
          }
        }
    }
  }
  if (!dt_part.empty()) return HomotopyCheck{false, "mc-dt"};
  return HomotopyCheck{};
}

/// For an L∞ algebra with only q_1 nonzero: if x_1 - x_0 = -q_1(w) for some w,
/// returns the linear path z = x_0 + t(x_1 - x_0) + dt·w.
inline std::optional<PolyPath> abelian_homotopy_witness(const MVector& x0, const MVector& x1, const LInftyStructure& S,
                                                        const ArtinAlgebra& A) {
  for (std::size_t k = 2; k <= S.max_arity(); ++k)
    if (S.has_arity(k)) throw InvalidInput("abelian_homotopy_witness: structure has higher brackets");
  if (!is_linfty_mc(x0, S, A) || !is_linfty_mc(x1, S, A)) {
    throw InvalidInput("abelian_homotopy_witness: endpoints must be MC elements");
  }
  GradedSpace shifted = S.space().shifted(1);
  CohomologySummary C(shifted, S.linear_part());
  MVector diff = x1 - x0;
  MVector w;
  for (const auto& [m, v] : diff) {
    auto pre = C.preimage(0, scaled(v, -1));
    if (!pre) return std::nullopt;
    add_scaled(w, m, *pre, 1);
  }
  PolyPath z;
  z.u = {x0, diff};
  z.w = {w};
  return z;
}

}  // namespace dglinf
