#pragma once

// Differential graded Lie algebras and commutative dg algebras given by
// structure constants, their axiom checks, and the tensor and Hom
// constructions.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dglinf/cohomology.hpp"
#include "dglinf/graded.hpp"

namespace dglinf {

/// Bilinear operation on a basis: (i, j) -> product of e_i and e_j.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim) : dim_(dim), table_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  const Vector& at(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, Vector v) { table_[i * dim_ + j] = std::move(v); }
  void add(std::size_t i, std::size_t j, std::size_t k, const Rational& c) {
    dglinf::add_term(table_[i * dim_ + j], k, c);
  }

  bool is_zero() const {
    for (const auto& v : table_)
      if (!v.empty()) return false;
    return true;
  }

  /// Bilinear extension to arbitrary vectors.
  Vector apply(const Vector& x, const Vector& y) const {
    Vector out;
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) add_scaled(out, at(i, j), a * b);
    return out;
  }

  bool operator==(const StructureConstants&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Vector> table_;
};

/// Outcome of an axiom check: ok, or the violated axiom with witnessing basis
/// elements and the nonzero discrepancy.
struct CheckResult {
  bool ok = true;
  std::string axiom;
  std::vector<std::string> witness;
  Vector discrepancy;

  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string axiom, std::vector<std::string> witness, Vector discrepancy) {
    return CheckResult{false, std::move(axiom), std::move(witness), std::move(discrepancy)};
  }
  explicit operator bool() const { return ok; }
};

/// Unchecked dgla data. `Dgla` is the validated form.
struct DglaData {
  GradedSpace space;
  GradedMap d;
  StructureConstants bracket;
  bool operator==(const DglaData&) const = default;
};

/// Unchecked cdga data; `product` is the multiplication table.
struct CdgaData {
  GradedSpace space;
  GradedMap d;
  StructureConstants product;
  bool operator==(const CdgaData&) const = default;
};

namespace detail {

inline bool inhomogeneous_table(const GradedSpace& s, const StructureConstants& t, std::size_t& bad_i,
                                std::size_t& bad_j) {
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j)
      if (!s.is_homogeneous(t.at(i, j), s.degree(i) + s.degree(j))) {
        bad_i = i;
        bad_j = j;
        return true;
      }
  return false;
}

}  // namespace detail

/// Verifies d∘d = 0, graded skew-symmetry, graded Jacobi and graded Leibniz
/// on every basis pair/triple. Also rejects brackets that do not add degrees.
inline CheckResult check_dgla(const DglaData& L) {
  const auto& s = L.space;
  const std::size_t n = s.dim();
  if (L.d.degree() != 1 || L.d.source_dim() != n) {
    return CheckResult::fail("differential-shape", {}, {});
  }
  std::size_t bi = 0, bj = 0;
  if (detail::inhomogeneous_table(s, L.bracket, bi, bj)) {
    return CheckResult::fail("bracket-degree", {s.name(bi), s.name(bj)}, L.bracket.at(bi, bj));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vector dd = L.d.apply(L.d.column(i));
    if (!dd.empty()) return CheckResult::fail("d-squared", {s.name(i)}, dd);
  }
  auto br = [&](const Vector& x, const Vector& y) { return L.bracket.apply(x, y); };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      // [a,b] + (-1)^{|a||b|}[b,a] = 0
      Vector r = L.bracket.at(a, b);
      add_scaled(r, L.bracket.at(b, a), sign_pow(1LL * s.degree(a) * s.degree(b)));
      if (!r.empty()) return CheckResult::fail("skew-symmetry", {s.name(a), s.name(b)}, r);
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // d[a,b] - [da,b] - (-1)^{|a|}[a,db] = 0
      Vector r = L.d.apply(L.bracket.at(a, b));
      add_scaled(r, br(L.d.column(a), basis_vector(b)), -1);
      add_scaled(r, br(basis_vector(a), L.d.column(b)), -sign_pow(s.degree(a)));
      if (!r.empty()) return CheckResult::fail("leibniz", {s.name(a), s.name(b)}, r);
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        // [a,[b,c]] - [[a,b],c] - (-1)^{|a||b|}[b,[a,c]] = 0
        Vector r = br(basis_vector(a), L.bracket.at(b, c));
        add_scaled(r, br(L.bracket.at(a, b), basis_vector(c)), -1);
        add_scaled(r, br(basis_vector(b), L.bracket.at(a, c)), -sign_pow(1LL * s.degree(a) * s.degree(b)));
        if (!r.empty()) return CheckResult::fail("jacobi", {s.name(a), s.name(b), s.name(c)}, r);
      }
  return CheckResult::pass();
}

/// Verifies d∘d = 0, graded commutativity, associativity and Leibniz.
inline CheckResult check_cdga(const CdgaData& A) {
  const auto& s = A.space;
  const std::size_t n = s.dim();
  if (A.d.degree() != 1 || A.d.source_dim() != n) return CheckResult::fail("differential-shape", {}, {});
  std::size_t bi = 0, bj = 0;
  if (detail::inhomogeneous_table(s, A.product, bi, bj)) {
    return CheckResult::fail("product-degree", {s.name(bi), s.name(bj)}, A.product.at(bi, bj));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vector dd = A.d.apply(A.d.column(i));
    if (!dd.empty()) return CheckResult::fail("d-squared", {s.name(i)}, dd);
  }
  auto mul = [&](const Vector& x, const Vector& y) { return A.product.apply(x, y); };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Vector r = A.product.at(a, b);
      add_scaled(r, A.product.at(b, a), -sign_pow(1LL * s.degree(a) * s.degree(b)));
      if (!r.empty()) return CheckResult::fail("graded-commutativity", {s.name(a), s.name(b)}, r);
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector r = A.d.apply(A.product.at(a, b));
      add_scaled(r, mul(A.d.column(a), basis_vector(b)), -1);
      add_scaled(r, mul(basis_vector(a), A.d.column(b)), -sign_pow(s.degree(a)));
      if (!r.empty()) return CheckResult::fail("leibniz", {s.name(a), s.name(b)}, r);
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        Vector r = mul(basis_vector(a), A.product.at(b, c));
        add_scaled(r, mul(A.product.at(a, b), basis_vector(c)), -1);
        if (!r.empty()) return CheckResult::fail("associativity", {s.name(a), s.name(b), s.name(c)}, r);
      }
  return CheckResult::pass();
}

/// Raised when data handed to a validating constructor violates an axiom.
class AxiomViolation : public InvalidInput {
 public:
  explicit AxiomViolation(CheckResult r)
      : InvalidInput(describe(r)), result_(std::move(r)) {}
  const CheckResult& result() const { return result_; }

 private:
  static std::string describe(const CheckResult& r) {
    std::string s = "axiom violated: " + r.axiom;
    for (std::size_t i = 0; i < r.witness.size(); ++i) s += (i ? ", " : " on ") + r.witness[i];
    return s;
  }
  CheckResult result_;
};

/// A dgla whose axioms have been verified.
class Dgla {
 public:
  explicit Dgla(DglaData data) : data_(std::move(data)) {
    auto r = check_dgla(data_);
    if (!r) throw AxiomViolation(std::move(r));
  }

  const GradedSpace& space() const { return data_.space; }
  const GradedMap& d() const { return data_.d; }
  const StructureConstants& bracket_table() const { return data_.bracket; }
  const DglaData& data() const { return data_; }
  std::size_t dim() const { return data_.space.dim(); }
  int degree(std::size_t i) const { return data_.space.degree(i); }

  Vector bracket(const Vector& x, const Vector& y) const { return data_.bracket.apply(x, y); }
  Vector differential(const Vector& x) const { return data_.d.apply(x); }
  bool is_abelian() const { return data_.bracket.is_zero(); }

  CohomologySummary cohomology() const { return complex_cohomology(data_.space, data_.d); }

  bool operator==(const Dgla& o) const {
    return data_.space == o.data_.space && data_.d == o.data_.d && data_.bracket == o.data_.bracket;
  }

 private:
  DglaData data_;
};

class Cdga {
 public:
  explicit Cdga(CdgaData data) : data_(std::move(data)) {
    auto r = check_cdga(data_);
    if (!r) throw AxiomViolation(std::move(r));
  }

  /// Q concentrated in degree 0 with basis {1}.
  static Cdga ground_field(std::string unit_name = "1") {
    GradedSpace s({{std::move(unit_name), 0}});
    StructureConstants p(1);
    p.add(0, 0, 0, 1);
    return Cdga(CdgaData{s, GradedMap::zero(s, 1), std::move(p)});
  }

  const GradedSpace& space() const { return data_.space; }
  const GradedMap& d() const { return data_.d; }
  const StructureConstants& product_table() const { return data_.product; }
  const CdgaData& data() const { return data_; }
  std::size_t dim() const { return data_.space.dim(); }
  int degree(std::size_t i) const { return data_.space.degree(i); }
  Vector multiply(const Vector& x, const Vector& y) const { return data_.product.apply(x, y); }

  bool operator==(const Cdga& o) const {
    return data_.space == o.data_.space && data_.d == o.data_.d && data_.product == o.data_.product;
  }

 private:
  CdgaData data_;
};

/// Exponents of the signs in the CDGA ⊗ dgla formulas, parameterized so the
/// single-sign mutation tests can perturb them. The default is the correct
/// structure:
///   d(a⊗x)     = d_A a ⊗ x + (-1)^{|a|} a ⊗ d_L x
///   [a⊗x, b⊗y] = (-1)^{|b||x|} ab ⊗ [x,y]
struct TensorSigns {
  int d_first = 1;     // overall factor on d_A a ⊗ x (±1)
  int d_second = 1;    // overall factor on the (-1)^{..} a ⊗ d_L x term (±1)
  // exponent of the second d-term sign: coeff_a·|a| + coeff_x·|x| + coeff_ax·|a||x|
  int d_exp_a = 1;
  int d_exp_x = 0;
  int d_exp_ax = 0;
  // exponent of the bracket sign: Σ coefficients on |b||x|, |a||y|, |a||b|,
  // |x||y|, |a|, |x|
  int br_bx = 1;
  int br_ay = 0;
  int br_ab = 0;
  int br_xy = 0;
  int br_a = 0;
  int br_x = 0;
};

/// Basis index of a⊗x in the tensor product built below.
inline std::size_t tensor_index(std::size_t a, std::size_t x, std::size_t dim_l) { return a * dim_l + x; }

namespace detail {

inline DglaData tensor_presentation(const Cdga& A, const Dgla& L, const TensorSigns& sg) {
  const std::size_t na = A.dim(), nl = L.dim();
  std::vector<GradedSpace::BasisElement> basis;
  basis.reserve(na * nl);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t x = 0; x < nl; ++x)
      basis.push_back({A.space().name(a) + "*" + L.space().name(x), A.degree(a) + L.degree(x)});
  GradedSpace space(std::move(basis));

  std::vector<Vector> dcols(na * nl);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t x = 0; x < nl; ++x) {
      Vector& col = dcols[tensor_index(a, x, nl)];
      for (const auto& [a2, c] : A.d().column(a)) add_term(col, tensor_index(a2, x, nl), c * sg.d_first);
      const int s = sg.d_second * sign_pow(1LL * sg.d_exp_a * A.degree(a) + 1LL * sg.d_exp_x * L.degree(x) +
                                                 1LL * sg.d_exp_ax * A.degree(a) * L.degree(x));
      for (const auto& [x2, c] : L.d().column(x)) add_term(col, tensor_index(a, x2, nl), c * s);
    }
  GradedMap d(space, space, 1, std::move(dcols));

  StructureConstants br(na * nl);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t x = 0; x < nl; ++x)
      for (std::size_t b = 0; b < na; ++b) {
        const Vector& ab = A.product_table().at(a, b);
        if (ab.empty()) continue;
        for (std::size_t y = 0; y < nl; ++y) {
          const Vector& xy = L.bracket_table().at(x, y);
          if (xy.empty()) continue;
          const long long da = A.degree(a), db = A.degree(b), dx = L.degree(x), dy = L.degree(y);
          const int s = sign_pow(sg.br_bx * db * dx + sg.br_ay * da * dy + sg.br_ab * da * db + sg.br_xy * dx * dy +
                                  sg.br_a * da + sg.br_x * dx);
          Vector out;
          for (const auto& [c, u] : ab)
            for (const auto& [z, v] : xy) add_term(out, tensor_index(c, z, nl), u * v * s);
          br.set(tensor_index(a, x, nl), tensor_index(b, y, nl), std::move(out));
        }
      }
  return DglaData{std::move(space), std::move(d), std::move(br)};
}

}  // namespace detail

/// A ⊗ L with the induced dgla structure; basis a*x ordered a-major.
inline Dgla tensor_cdga_dgla(const Cdga& A, const Dgla& L) {
  return Dgla(detail::tensor_presentation(A, L, TensorSigns{}));
}

/// Basis index of the elementary map e_src -> e_dst in hom_dgla.
inline std::size_t hom_index(std::size_t dst, std::size_t src, std::size_t dim_v) { return dst * dim_v + src; }

/// Endomorphism dgla Hom(V,V): [f,g] = f∘g - (-1)^{|f||g|} g∘f and
/// df = d∘f - (-1)^{|f|} f∘d. Basis element "Hom(v,w)" sends v to w and has
/// degree |w| - |v|.
inline Dgla hom_dgla(const GradedSpace& V, const GradedMap& d) {
  if (d.degree() != 1) throw InvalidInput("hom_dgla: differential must have degree +1");
  complex_cohomology(V, d);  // throws NotAComplex when d∘d != 0
  const std::size_t n = V.dim();
  std::vector<GradedSpace::BasisElement> basis;
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t v = 0; v < n; ++v)
      basis.push_back({"Hom(" + V.name(v) + "," + V.name(w) + ")", V.degree(w) - V.degree(v)});
  GradedSpace H(std::move(basis));

  // Composition of elementary maps: E(w,v)∘E(u,t) = δ_{v,u} E(w,t).
  StructureConstants br(n * n);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t t = 0; t < n; ++t) {
        // f = E(w,v), g = E(v,t): f∘g = E(w,t); and g∘f = E(v,t)∘E(w,v) = δ_{t,w} E(v,v)
        const std::size_t f = hom_index(w, v, n), g = hom_index(v, t, n);
        br.add(f, g, hom_index(w, t, n), 1);
        const int s = sign_pow(1LL * H.degree(f) * H.degree(g));
        // [g,f] = g∘f - (-1)^{|f||g|} f∘g contributes -(-1)^{..} E(w,t)
        br.add(g, f, hom_index(w, t, n), -s);
      }

  // D = Σ d_{w v} E(w,v) as an element of Hom^1.
  Vector D;
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& [w, c] : d.column(v)) add_term(D, hom_index(w, v, n), c);
  std::vector<Vector> dcols(n * n);
  for (std::size_t f = 0; f < n * n; ++f) {
    // df = [D, f] since |D| = 1.
    dcols[f] = br.apply(D, basis_vector(f));
  }
  GradedMap dh(H, H, 1, std::move(dcols));
  return Dgla(DglaData{std::move(H), std::move(dh), std::move(br)});
}

}  // namespace dglinf
