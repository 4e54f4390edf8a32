#pragma once

// Exact linear algebra over Q or Q(t).
//
// Vectors are sparse (sorted index/value pairs). EchelonBasis maintains a
// reduced echelon form incrementally, which covers rank, membership,
// solving and kernels without forming dense matrices.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "diagcat/error.hpp"
#include "diagcat/scalar.hpp"

namespace diagcat {

using SparseEntry = std::pair<std::size_t, FieldElement>;
using SparseVec = std::vector<SparseEntry>;  // sorted by index, no zeros

inline const FieldElement* sparse_find(const SparseVec& v, std::size_t idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx, [](const SparseEntry& e, std::size_t i) { return e.first < i; });
  return (it != v.end() && it->first == idx) ? &it->second : nullptr;
}

/// v + c * w
inline SparseVec sparse_axpy(const SparseVec& v, const FieldElement& c, const SparseVec& w) {
  SparseVec out;
  out.reserve(v.size() + w.size());
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < w.size()) {
    if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
      out.push_back(v[i++]);
    } else if (i == v.size() || w[j].first < v[i].first) {
      out.emplace_back(w[j].first, c * w[j].second);
      ++j;
    } else {
      FieldElement s = v[i].second + c * w[j].second;
      if (!s.is_zero()) out.emplace_back(v[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

inline SparseVec sparse_scale(const SparseVec& v, const FieldElement& c) {
  if (c.is_zero()) return {};
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, x * c);
  return out;
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
inline SparseVec sparse_from_entries(std::vector<SparseEntry> entries) {
  std::sort(entries.begin(), entries.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.first < b.first; });
  SparseVec out;
  for (auto& e : entries) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!e.second.is_zero()) {
      out.push_back(std::move(e));
    }
  }
  return out;
}

/// Incremental reduced echelon basis of a subspace.
///
/// With tracking enabled, every basis vector remembers its expression in the
/// inserted vectors, so `express` solves linear systems and dependent
/// insertions yield kernel relations.
class EchelonBasis {
public:
  explicit EchelonBasis(const FieldSpec& field, bool track = false) : one_(field.one()), track_(track) {}

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t inserted() const noexcept { return inserted_; }

  /// Returns true if v was independent of the current span.
  bool insert(const SparseVec& v) {
    SparseVec comb;
    if (track_) comb.emplace_back(inserted_, one_);
    ++inserted_;
    SparseVec r = reduce_impl(v, track_ ? &comb : nullptr);
    if (r.empty()) {
      if (track_) relations_.push_back(std::move(comb));
      return false;
    }
    // Prefer a t-free pivot to keep entries small.
    std::size_t pick = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i].second.is_constant()) {
        pick = i;
        break;
      }
    }
    const FieldElement inv = r[pick].second.inverse();
    Row row;
    row.pivot = r[pick].first;
    row.vec = sparse_scale(r, inv);
    if (track_) row.comb = sparse_scale(comb, inv);
    rows_.push_back(std::move(row));
    return true;
  }

  SparseVec reduce(const SparseVec& v) const { return reduce_impl(v, nullptr); }
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  /// Coefficients c (indexed by insertion order) with v = sum c_k inserted_k,
  /// or nullopt when v is outside the span. Requires tracking.
  std::optional<SparseVec> express(const SparseVec& v) const {
    if (!track_) throw Error("EchelonBasis::express requires tracking");
    SparseVec comb;
    SparseVec r = reduce_impl(v, &comb, /*negate_comb=*/true);
    if (!r.empty()) return std::nullopt;
    return comb;
  }

  /// Kernel relations: each is a combination of inserted vectors summing to 0.
  const std::vector<SparseVec>& relations() const noexcept { return relations_; }

  std::vector<SparseVec> basis_vectors() const {
    std::vector<SparseVec> out;
    for (const auto& r : rows_) out.push_back(r.vec);
    return out;
  }

private:
  struct Row {
    std::size_t pivot = 0;
    SparseVec vec;   // pivot entry is 1
    SparseVec comb;  // vec = sum comb_k inserted_k
  };

  // Subtracts multiples of basis rows from v. With comb != nullptr, tracks
  // comb -= c * row.comb (or += when negate_comb, used by express()).
  SparseVec reduce_impl(SparseVec v, SparseVec* comb, bool negate_comb = false) const {
    for (const auto& row : rows_) {
      if (v.empty()) break;
      const FieldElement* c = sparse_find(v, row.pivot);
      if (!c) continue;
      const FieldElement coef = *c;
      v = sparse_axpy(v, -coef, row.vec);
      if (comb) *comb = sparse_axpy(*comb, negate_comb ? coef : -coef, row.comb);
    }
    return v;
  }

  FieldElement one_;
  bool track_;
  std::size_t inserted_ = 0;
  std::vector<Row> rows_;
  std::vector<SparseVec> relations_;
};

/// Dense exact matrix; all entries share the field mode.
class ExactMatrix {
public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols, const FieldElement& zero)
      : rows_(rows), cols_(cols), data_(rows * cols, zero) {}

  static ExactMatrix identity(std::size_t n, const FieldSpec& field) {
    ExactMatrix m(n, n, field.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static ExactMatrix from_columns(const std::vector<SparseVec>& columns, std::size_t rows, const FieldSpec& field) {
    ExactMatrix m(rows, columns.size(), field.zero());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (const auto& [i, x] : columns[j]) {
        if (i >= rows) throw Error("column entry out of range");
        m(i, j) = x;
      }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  FieldElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const FieldElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  SparseVec column(std::size_t j) const {
    SparseVec v;
    for (std::size_t i = 0; i < rows_; ++i)
      if (!(*this)(i, j).is_zero()) v.emplace_back(i, (*this)(i, j));
    return v;
  }

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> data_;
};

inline std::size_t rank(const ExactMatrix& a, const FieldSpec& field) {
  EchelonBasis basis(field);
  for (std::size_t j = 0; j < a.cols(); ++j) basis.insert(a.column(j));
  return basis.rank();
}

/// Basis of {x : A x = 0}, each vector dense of length cols().
inline std::vector<std::vector<FieldElement>> kernel(const ExactMatrix& a, const FieldSpec& field) {
  EchelonBasis basis(field, /*track=*/true);
  for (std::size_t j = 0; j < a.cols(); ++j) basis.insert(a.column(j));
  std::vector<std::vector<FieldElement>> out;
  for (const auto& rel : basis.relations()) {
    std::vector<FieldElement> x(a.cols(), field.zero());
    for (const auto& [i, c] : rel) x[i] = c;
    out.push_back(std::move(x));
  }
  return out;
}

/// Some x with A x = b, or nullopt when the system is inconsistent.
inline std::optional<std::vector<FieldElement>> solve(const ExactMatrix& a, const std::vector<FieldElement>& b,
                                                      const FieldSpec& field) {
  if (b.size() != a.rows()) throw Error("solve: right-hand side has wrong length");
  EchelonBasis basis(field, /*track=*/true);
  for (std::size_t j = 0; j < a.cols(); ++j) basis.insert(a.column(j));
  SparseVec rhs;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) rhs.emplace_back(i, b[i]);
  auto comb = basis.express(rhs);
  if (!comb) return std::nullopt;
  std::vector<FieldElement> x(a.cols(), field.zero());
  for (const auto& [i, c] : *comb) x[i] = c;
  return x;
}

inline bool is_bijective(const ExactMatrix& a, const FieldSpec& field) {
  return a.rows() == a.cols() && rank(a, field) == a.cols();
}

/// Dense matrix-vector product, used to re-verify solutions.
inline std::vector<FieldElement> multiply(const ExactMatrix& a, const std::vector<FieldElement>& x,
                                          const FieldSpec& field) {
  std::vector<FieldElement> y(a.rows(), field.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !x[j].is_zero()) y[i] += a(i, j) * x[j];
  return y;
}

}  // namespace diagcat
