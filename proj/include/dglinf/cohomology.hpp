#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dglinf/graded.hpp"
#include "dglinf/linalg.hpp"

namespace dglinf {

/// Raised when a supposed differential does not square to zero.
class NotAComplex : public Error {
 public:
  NotAComplex(std::string witness, Vector value)
      : Error("d∘d != 0 on basis element " + witness), witness_(std::move(witness)),
        value_(std::move(value)) {}
  const std::string& witness() const { return witness_; }
  const Vector& value() const { return value_; }

 private:
  std::string witness_;
  Vector value_;
};

struct DegreeCohomology {
  int degree = 0;
  std::size_t chain_dim = 0;
  std::size_t cocycle_dim = 0;
  std::size_t coboundary_dim = 0;
  std::size_t dimension = 0;
  std::vector<Vector> representatives;
};

namespace detail {

/// Row operations E bringing a matrix M to reduced echelon form, kept so that
/// later systems M x = b can be solved by one matrix-vector product.
struct EchelonSolver {
  std::vector<std::size_t> pivots;
  Matrix transform;  // E, rows x rows
  std::size_t cols = 0;

  static EchelonSolver build(const Matrix& m) {
    Matrix aug(m.rows(), m.cols() + m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
      aug(r, m.cols() + r) = 1;
    }
    EchelonSolver s;
    s.cols = m.cols();
    for (auto p : rref(aug)) {
      if (p >= m.cols()) break;
      s.pivots.push_back(p);
    }
    s.transform = Matrix(m.rows(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.rows(); ++c) s.transform(r, c) = aug(r, m.cols() + c);
    return s;
  }

  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const {
    const std::size_t rows = transform.rows();
    std::vector<Rational> eb(rows);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < rows; ++c)
        if (transform(r, c) != 0 && b[c] != 0) eb[r] += transform(r, c) * b[c];
    for (std::size_t r = pivots.size(); r < rows; ++r)
      if (eb[r] != 0) return std::nullopt;
    std::vector<Rational> x(cols);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = eb[r];
    return x;
  }
};

}  // namespace detail

/// Cohomology of a finite cochain complex with enough retained state to
/// reduce cocycles to class coordinates and to invert the differential.
class CohomologySummary {
 public:
  CohomologySummary(const GradedSpace& space, const GradedMap& d) : space_(space), d_(d) {
    for (int deg : space.degrees()) build_degree(deg);
  }

  const GradedSpace& space() const { return space_; }
  const GradedMap& differential() const { return d_; }

  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [deg, _] : blocks_) out.push_back(deg);
    return out;
  }

  std::size_t dim(int degree) const {
    auto it = blocks_.find(degree);
    return it == blocks_.end() ? 0 : it->second.info.dimension;
  }

  DegreeCohomology at(int degree) const {
    auto it = blocks_.find(degree);
    if (it == blocks_.end()) return DegreeCohomology{degree, 0, 0, 0, 0, {}};
    return it->second.info;
  }

  bool is_cocycle(const Vector& v) const { return d_.apply(v).empty(); }

  /// Coordinates of the class of `cocycle` in the representative basis.
  std::vector<Rational> class_of(int degree, const Vector& cocycle) const {
    if (!space_.is_homogeneous(cocycle, degree)) {
      throw InvalidInput("class_of: vector is not homogeneous of degree " + std::to_string(degree));
    }
    if (!is_cocycle(cocycle)) throw InvalidInput("class_of: vector is not a cocycle");
    auto it = blocks_.find(degree);
    if (it == blocks_.end()) return {};
    const Block& b = it->second;
    std::vector<Rational> out(b.info.dimension);
    const std::size_t nb = b.info.coboundary_dim;
    for (std::size_t k = 0; k < out.size(); ++k) {
      const std::size_t row = nb + k;
      for (std::size_t c = 0; c < b.local.size(); ++c) {
        auto v = cocycle.find(b.local[c]);
        if (v != cocycle.end() && b.left_inverse(row, c) != 0) out[k] += b.left_inverse(row, c) * v->second;
      }
    }
    return out;
  }

  bool is_exact(int degree, const Vector& cocycle) const {
    for (const auto& c : class_of(degree, cocycle))
      if (c != 0) return false;
    return true;
  }

  /// Some w of degree (degree-1) with d w = target, chosen with free
  /// variables set to zero in basis order; nullopt when target is not exact.
  std::optional<Vector> preimage(int degree, const Vector& target) const {
    if (target.empty()) return Vector{};
    if (!space_.is_homogeneous(target, degree)) return std::nullopt;
    auto it = blocks_.find(degree - 1);
    if (it == blocks_.end()) return std::nullopt;
    const Block& src = it->second;
    const auto& tgt_local = blocks_.at(degree).local;
    std::vector<Rational> b(tgt_local.size());
    for (std::size_t r = 0; r < tgt_local.size(); ++r) {
      auto v = target.find(tgt_local[r]);
      if (v != target.end()) b[r] = v->second;
    }
    auto x = src.outgoing.solve(b);
    if (!x) return std::nullopt;
    Vector w;
    for (std::size_t c = 0; c < x->size(); ++c) add_term(w, src.local[c], (*x)[c]);
    return w;
  }

 private:
  struct Block {
    DegreeCohomology info;
    std::vector<std::size_t> local;  // global indices of C^deg
    detail::EchelonSolver outgoing;  // for d: C^deg -> C^{deg+1}
    detail::Matrix left_inverse;     // rows: coboundary basis then representatives
  };

  detail::Matrix block_matrix(int from_deg) const {
    auto src = space_.indices_of_degree(from_deg);
    auto dst = space_.indices_of_degree(from_deg + 1);
    std::map<std::size_t, std::size_t> row_of;
    for (std::size_t r = 0; r < dst.size(); ++r) row_of[dst[r]] = r;
    detail::Matrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c)
      for (const auto& [j, v] : d_.column(src[c])) m(row_of.at(j), c) = v;
    return m;
  }

  void build_degree(int deg) {
    Block b;
    b.local = space_.indices_of_degree(deg);
    const std::size_t n = b.local.size();
    b.info.degree = deg;
    b.info.chain_dim = n;

    for (std::size_t i : b.local) {
      Vector dd = d_.apply(d_.column(i));
      if (!dd.empty()) throw NotAComplex(space_.name(i), dd);
    }

    detail::Matrix out = block_matrix(deg);
    b.outgoing = detail::EchelonSolver::build(out);
    auto kernel = detail::nullspace(out);
    b.info.cocycle_dim = kernel.size();

    // Coboundaries: images of the pivot columns of d^{deg-1}.
    detail::Matrix in = block_matrix(deg - 1);
    std::vector<std::vector<Rational>> cobound;
    {
      detail::Matrix tmp = in;
      for (auto p : detail::rref(tmp)) cobound.push_back(in.column(p));
    }
    b.info.coboundary_dim = cobound.size();

    // Extend the coboundary basis to a basis of the cocycles.
    detail::Matrix ext(n, cobound.size() + kernel.size());
    for (std::size_t c = 0; c < cobound.size(); ++c)
      for (std::size_t r = 0; r < n; ++r) ext(r, c) = cobound[c][r];
    for (std::size_t c = 0; c < kernel.size(); ++c)
      for (std::size_t r = 0; r < n; ++r) ext(r, cobound.size() + c) = kernel[c][r];
    std::vector<std::vector<Rational>> basis = cobound;
    {
      detail::Matrix tmp = ext;
      for (auto p : detail::rref(tmp)) {
        if (p < cobound.size()) continue;
        basis.push_back(kernel[p - cobound.size()]);
        Vector rep;
        for (std::size_t r = 0; r < n; ++r) add_term(rep, b.local[r], kernel[p - cobound.size()][r]);
        b.info.representatives.push_back(std::move(rep));
      }
    }
    b.info.dimension = b.info.representatives.size();

    // Left inverse of the full-column-rank matrix [B | R].
    detail::Matrix basis_m(n, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
      for (std::size_t r = 0; r < n; ++r) basis_m(r, c) = basis[c][r];
    auto solver = detail::EchelonSolver::build(basis_m);
    b.left_inverse = detail::Matrix(basis.size(), n);
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) b.left_inverse(r, c) = solver.transform(r, c);

    blocks_.emplace(deg, std::move(b));
  }

  GradedSpace space_;
  GradedMap d_;
  std::map<int, Block> blocks_;
};

/// Cohomology of (space, differential). Throws NotAComplex if d∘d != 0.
inline CohomologySummary complex_cohomology(const GradedSpace& space, const GradedMap& differential) {
  if (differential.degree() != 1) throw InvalidInput("complex_cohomology: differential must have degree +1");
  return CohomologySummary(space, differential);
}

}  // namespace dglinf
