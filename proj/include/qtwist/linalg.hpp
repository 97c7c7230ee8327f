#pragma once

// Exact linear algebra over a field type F (Rational or ModP): sparse
// vectors, an incremental reduced row echelon form, and small dense matrices.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtwist {

/// Sparse vector: (index, coefficient) pairs, strictly increasing indices,
/// no stored zeros.
template <class F>
using SparseVec = std::vector<std::pair<std::size_t, F>>;

namespace sparse {

template <class F>
SparseVec<F> unit(std::size_t i) {
  return {{i, F(1)}};
}

/// a + c * b
template <class F>
SparseVec<F> axpy(const SparseVec<F>& a, const F& c, const SparseVec<F>& b) {
  if (c.is_zero()) return a;
  SparseVec<F> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, c * ib->second);
      ++ib;
    } else {
      F v = ia->second + c * ib->second;
      if (!v.is_zero()) out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  return out;
}

template <class F>
SparseVec<F> scale(SparseVec<F> a, const F& c) {
  if (c.is_zero()) return {};
  for (auto& [i, v] : a) v *= c;
  return a;
}

/// Accumulates scaled sparse vectors in a dense buffer; cheaper than
/// repeated axpy when many vectors are summed.
template <class F>
class Accumulator {
 public:
  explicit Accumulator(std::size_t dim) : values_(dim), touched_(dim, false) {}

  void add(std::size_t i, const F& c) {
    if (i >= values_.size()) throw std::out_of_range("accumulator index out of range");
    if (!touched_[i]) {
      touched_[i] = true;
      indices_.push_back(i);
      values_[i] = c;
    } else {
      values_[i] += c;
    }
  }
  void add(const SparseVec<F>& v, const F& c) {
    if (c.is_zero()) return;
    for (const auto& [i, x] : v) add(i, c * x);
  }

  SparseVec<F> take() {
    std::sort(indices_.begin(), indices_.end());
    SparseVec<F> out;
    for (std::size_t i : indices_) {
      if (!values_[i].is_zero()) out.emplace_back(i, values_[i]);
      touched_[i] = false;
      values_[i] = F(0);
    }
    indices_.clear();
    return out;
  }

 private:
  std::vector<F> values_;
  std::vector<bool> touched_;
  std::vector<std::size_t> indices_;
};

/// Sums loose (index, value) terms into a sparse vector; for short sums where
/// a dense Accumulator would be mostly idle.
template <class F>
SparseVec<F> collect(std::vector<std::pair<std::size_t, F>> terms) {
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec<F> out;
  for (auto& [i, c] : terms) {
    if (!out.empty() && out.back().first == i)
      out.back().second += c;
    else
      out.emplace_back(i, std::move(c));
  }
  std::erase_if(out, [](const auto& t) { return t.second.is_zero(); });
  return out;
}

template <class F>
F coefficient(const SparseVec<F>& v, std::size_t i) {
  auto it = std::lower_bound(v.begin(), v.end(), i,
                             [](const auto& p, std::size_t k) { return p.first < k; });
  return (it != v.end() && it->first == i) ? it->second : F(0);
}

}  // namespace sparse

/// Incremental row echelon form. The pivot of a row is its smallest index
/// and pivot coefficients are 1. Insertion only reduces the new row against
/// the stored ones; rows() back-substitutes on demand so that the returned
/// rows are fully reduced (a pivot index appears in no other row).
template <class F>
class Echelon {
 public:
  Echelon() = default;

  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<SparseVec<F>>& rows() const {
    if (!reduced_) back_substitute();
    return rows_;
  }

  bool is_pivot(std::size_t i) const { return find_row(i).has_value(); }

  /// Reduces v against the stored rows; the result has no pivot entries.
  SparseVec<F> reduce(SparseVec<F> v) const {
    std::size_t k = 0;
    while (k < v.size()) {
      if (auto r = find_row(v[k].first)) {
        const F c = v[k].second;
        v = sparse::axpy(v, -c, rows_[*r]);
      } else {
        ++k;
      }
    }
    return v;
  }

  /// Returns true if v was independent of the stored rows (and stores it).
  bool insert(SparseVec<F> v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    const F lead_inv = v.front().second.inverse();
    v = sparse::scale(std::move(v), lead_inv);
    const std::size_t p = v.front().first;
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const auto at = pos - pivots_.begin();
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + at, std::move(v));
    reduced_ = false;
    return true;
  }

  bool contains(const SparseVec<F>& v) const { return reduce(v).empty(); }

 private:
  std::optional<std::size_t> find_row(std::size_t i) const {
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), i);
    if (it != pivots_.end() && *it == i) return static_cast<std::size_t>(it - pivots_.begin());
    return std::nullopt;
  }

  // Rows with larger pivots are reduced first, so each row only needs one
  // pass against already reduced rows.
  void back_substitute() const {
    for (std::size_t r = rows_.size(); r-- > 0;) {
      SparseVec<F>& row = rows_[r];
      std::size_t k = 1;
      while (k < row.size()) {
        if (auto s = find_row(row[k].first)) {
          const F c = row[k].second;
          row = sparse::axpy(row, -c, rows_[*s]);
        } else {
          ++k;
        }
      }
    }
    reduced_ = true;
  }

  mutable std::vector<SparseVec<F>> rows_;
  std::vector<std::size_t> pivots_;
  mutable bool reduced_ = true;
};

/// Kernel of the linear map whose i-th column image is images[i] (vectors in
/// a codomain of dimension `codim`). Returns a basis of the kernel as sparse
/// vectors over the domain, in reduced echelon form.
template <class F>
std::vector<SparseVec<F>> kernel_of_columns(const std::vector<SparseVec<F>>& images,
                                            std::size_t codim) {
  Echelon<F> ech;
  for (std::size_t i = 0; i < images.size(); ++i) {
    SparseVec<F> aug = images[i];
    aug.emplace_back(codim + i, F(1));
    ech.insert(std::move(aug));
  }
  std::vector<SparseVec<F>> out;
  for (const auto& row : ech.rows()) {
    if (row.front().first < codim) continue;
    SparseVec<F> k;
    k.reserve(row.size());
    for (const auto& [i, c] : row) k.emplace_back(i - codim, c);
    out.push_back(std::move(k));
  }
  return out;
}

/// Small dense matrix, row-major.
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& x) { return x.is_zero(); });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const F& y = b(k, j);
          if (!y.is_zero()) out(i, j) += x * y;
        }
      }
    return out;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  Matrix scaled(const F& c) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= c;
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<F> column(std::size_t c) const {
    std::vector<F> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  SparseVec<F> sparse_column(std::size_t c) const {
    SparseVec<F> v;
    for (std::size_t r = 0; r < rows_; ++r)
      if (!(*this)(r, c).is_zero()) v.emplace_back(r, (*this)(r, c));
    return v;
  }

  SparseVec<F> apply(const SparseVec<F>& x) const {
    sparse::Accumulator<F> acc(rows_);
    for (const auto& [j, c] : x)
      for (std::size_t r = 0; r < rows_; ++r)
        if (!(*this)(r, j).is_zero()) acc.add(r, c * (*this)(r, j));
    return acc.take();
  }

  /// Matrix whose columns are the given sparse vectors.
  static Matrix from_columns(const std::vector<SparseVec<F>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [r, x] : cols[c]) m(r, c) = x;
    return m;
  }

  std::size_t rank() const {
    Echelon<F> e;
    for (std::size_t r = 0; r < rows_; ++r) {
      SparseVec<F> row;
      for (std::size_t c = 0; c < cols_; ++c)
        if (!(*this)(r, c).is_zero()) row.emplace_back(c, (*this)(r, c));
      e.insert(std::move(row));
    }
    return e.rank();
  }

  bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

  /// Basis of {x : A x = 0}.
  std::vector<SparseVec<F>> nullspace() const {
    std::vector<SparseVec<F>> images(cols_);
    for (std::size_t c = 0; c < cols_; ++c) images[c] = sparse_column(c);
    return kernel_of_columns(images, rows_);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

/// Coordinate solver for a fixed independent family of vectors in a space of
/// dimension `dim`.
template <class F>
class SpanSolver {
 public:
  SpanSolver(const std::vector<SparseVec<F>>& basis, std::size_t dim) : dim_(dim) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      SparseVec<F> aug = basis[i];
      aug.emplace_back(dim + i, F(1));
      ech_.insert(std::move(aug));
    }
    // a dependent family leaves a row whose pivot lies in the tag range
    for (const auto& row : ech_.rows())
      if (row.front().first >= dim_) throw std::invalid_argument("SpanSolver: family is dependent");
  }

  std::optional<SparseVec<F>> coordinates(const SparseVec<F>& v) const {
    SparseVec<F> r = ech_.reduce(v);
    SparseVec<F> coords;
    for (const auto& [i, c] : r) {
      if (i < dim_) return std::nullopt;
      coords.emplace_back(i - dim_, -c);
    }
    return coords;
  }

 private:
  std::size_t dim_;
  Echelon<F> ech_;
};

}  // namespace qtwist
