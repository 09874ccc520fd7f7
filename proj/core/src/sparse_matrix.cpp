#include "confsink/sparse_matrix.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

#include "confsink/errors.hpp"

namespace confsink {

SparseIntMatrix SparseIntMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Entry> triplets) {
  SparseIntMatrix m(rows, cols);
  std::sort(triplets.begin(), triplets.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.col, a.row) < std::tie(b.col, b.row); });
  for (auto& t : triplets) {
    if (t.row >= rows || t.col >= cols) throw InvalidArgument("matrix entry out of bounds");
    if (!m.entries_.empty() && m.entries_.back().row == t.row && m.entries_.back().col == t.col) {
      m.entries_.back().value += t.value;
      if (m.entries_.back().value == 0) m.entries_.pop_back();
    } else if (t.value != 0) {
      m.entries_.push_back(std::move(t));
    }
  }
  return m;
}

SparseIntMatrix SparseIntMatrix::identity(std::size_t n) {
  std::vector<Entry> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1});
  return from_triplets(n, n, std::move(t));
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<mpz_class>>& dense) {
  const std::size_t rows = dense.size();
  const std::size_t cols = rows == 0 ? 0 : dense.front().size();
  std::vector<Entry> t;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (dense[r].at(c) != 0) t.push_back({r, c, dense[r][c]});
  return from_triplets(rows, cols, std::move(t));
}

std::vector<std::vector<mpz_class>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<mpz_class>> out(rows_, std::vector<mpz_class>(cols_, 0));
  for (const auto& e : entries_) out[e.row][e.col] = e.value;
  return out;
}

SparseIntMatrix SparseIntMatrix::hconcat(const SparseIntMatrix& other) const {
  if (other.rows_ != rows_) throw InvalidArgument("hconcat: row counts differ");
  SparseIntMatrix out(rows_, cols_ + other.cols_);
  out.entries_ = entries_;
  for (const auto& e : other.entries_) out.entries_.push_back({e.row, e.col + cols_, e.value});
  return out;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("multiply: inner dimensions differ");
  std::vector<std::vector<std::pair<std::size_t, const mpz_class*>>> by_col(cols_);
  for (const auto& e : entries_) by_col[e.col].emplace_back(e.row, &e.value);
  std::map<std::pair<std::size_t, std::size_t>, mpz_class> acc;
  for (const auto& e : rhs.entries_)
    for (const auto& [row, value] : by_col[e.row]) acc[{e.col, row}] += *value * e.value;
  std::vector<Entry> t;
  for (auto& [key, value] : acc)
    if (value != 0) t.push_back({key.second, key.first, value});
  return from_triplets(rows_, rhs.cols_, std::move(t));
}

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

namespace {

/// Row-major working copy for elimination. Rows are sorted (col, value) vectors; each column keeps
/// the set of rows holding a nonzero, and columns are indexed by their current count so the
/// sparsest column can be found quickly.
class Eliminator {
 public:
  using Row = std::vector<std::pair<std::size_t, mpz_class>>;

  explicit Eliminator(const SparseIntMatrix& m) : rows_(m.rows()), col_rows_(m.cols()) {
    for (const auto& e : m.entries()) rows_[e.row].emplace_back(e.col, e.value);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::sort(rows_[r].begin(), rows_[r].end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [c, v] : rows_[r]) col_rows_[c].insert(r);
    }
    for (std::size_t c = 0; c < col_rows_.size(); ++c)
      if (!col_rows_[c].empty()) by_count_.emplace(col_rows_[c].size(), c);
  }

  bool empty() const { return by_count_.empty(); }

  const mpz_class* find(std::size_t r, std::size_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& a, std::size_t key) { return a.first < key; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  /// Sparsest column, and in it the shortest row (unit entries preferred).
  std::pair<std::size_t, std::size_t> markowitz_pivot() const {
    const std::size_t c = by_count_.begin()->second;
    return {best_row_in(c, false).value(), c};
  }

  /// Like markowitz_pivot but restricted to entries equal to +-1.
  std::optional<std::pair<std::size_t, std::size_t>> unit_pivot() const {
    for (const auto& [count, c] : by_count_) {
      if (auto r = best_row_in(c, true)) return std::make_pair(*r, c);
    }
    return std::nullopt;
  }

  /// Entry of least absolute value, ties broken by (row, col).
  std::pair<std::size_t, std::size_t> smallest_entry() const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    mpz_class best_abs;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [c, v] : rows_[r]) {
        mpz_class a = abs(v);
        if (!best || a < best_abs) {
          best = {r, c};
          best_abs = a;
        }
      }
    }
    return *best;
  }

  std::vector<std::size_t> rows_in(std::size_t c) const { return {col_rows_[c].begin(), col_rows_[c].end()}; }
  const Row& row(std::size_t r) const { return rows_[r]; }

  /// row[target] = a * row[target] + b * row[source].
  void combine(std::size_t target, const mpz_class& a, std::size_t source, const mpz_class& b) {
    Row merged;
    const Row& x = rows_[target];
    const Row& y = rows_[source];
    merged.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        merged.emplace_back(x[i].first, a * x[i].second);
        ++i;
      } else if (i == x.size() || y[j].first < x[i].first) {
        merged.emplace_back(y[j].first, b * y[j].second);
        add_to_column(y[j].first, target);
        ++j;
      } else {
        mpz_class v = a * x[i].second + b * y[j].second;
        if (v == 0) {
          remove_from_column(x[i].first, target);
        } else {
          merged.emplace_back(x[i].first, std::move(v));
        }
        ++i;
        ++j;
      }
    }
    rows_[target] = std::move(merged);
  }

  /// Divides a row by the gcd of its entries.
  void make_primitive(std::size_t r) {
    mpz_class g = 0;
    for (const auto& [c, v] : rows_[r]) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return;
    }
    if (g <= 1) return;
    for (auto& [c, v] : rows_[r]) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }

  void set_entry(std::size_t r, std::size_t c, mpz_class value) {
    auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& a, std::size_t key) { return a.first < key; });
    if (it != row.end() && it->first == c) {
      if (value == 0) {
        row.erase(it);
        remove_from_column(c, r);
      } else {
        it->second = std::move(value);
      }
    } else if (value != 0) {
      row.insert(it, {c, std::move(value)});
      add_to_column(c, r);
    }
  }

  void drop_row(std::size_t r) {
    for (const auto& [c, v] : rows_[r]) remove_from_column(c, r);
    rows_[r].clear();
  }

 private:
  std::optional<std::size_t> best_row_in(std::size_t c, bool units_only) const {
    std::optional<std::size_t> best;
    std::tuple<bool, std::size_t> best_key{};
    for (std::size_t r : col_rows_[c]) {
      const mpz_class& v = *find(r, c);
      const bool unit = v == 1 || v == -1;
      if (units_only && !unit) continue;
      std::tuple<bool, std::size_t> key{!unit, rows_[r].size()};
      if (!best || key < best_key) {
        best = r;
        best_key = key;
      }
    }
    return best;
  }

  void add_to_column(std::size_t c, std::size_t r) {
    auto& rows = col_rows_[c];
    if (!rows.empty()) by_count_.erase({rows.size(), c});
    rows.insert(r);
    by_count_.emplace(rows.size(), c);
  }

  void remove_from_column(std::size_t c, std::size_t r) {
    auto& rows = col_rows_[c];
    by_count_.erase({rows.size(), c});
    rows.erase(r);
    if (!rows.empty()) by_count_.emplace(rows.size(), c);
  }

  std::vector<Row> rows_;
  std::vector<std::set<std::size_t>> col_rows_;
  std::set<std::pair<std::size_t, std::size_t>> by_count_;
};

}  // namespace

std::size_t rank_over_rationals(const SparseIntMatrix& m) {
  Eliminator work(m);
  std::size_t rank = 0;
  while (!work.empty()) {
    const auto [pr, pc] = work.markowitz_pivot();
    const mpz_class pivot = *work.find(pr, pc);
    for (std::size_t r : work.rows_in(pc)) {
      if (r == pr) continue;
      const mpz_class a = *work.find(r, pc);
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), pivot.get_mpz_t(), a.get_mpz_t());
      const mpz_class scale_target = pivot / g;
      const mpz_class scale_source = -(a / g);
      work.combine(r, scale_target, pr, scale_source);
      if (abs(scale_target) != 1) work.make_primitive(r);
    }
    work.drop_row(pr);
    ++rank;
  }
  return rank;
}

std::vector<mpz_class> smith_normal_form(const SparseIntMatrix& m) {
  Eliminator work(m);
  std::size_t units = 0;
  std::vector<mpz_class> diagonal;
  while (!work.empty()) {
    if (auto unit = work.unit_pivot()) {
      const auto [pr, pc] = *unit;
      const mpz_class pivot = *work.find(pr, pc);
      for (std::size_t r : work.rows_in(pc)) {
        if (r == pr) continue;
        const mpz_class factor = -(*work.find(r, pc) * pivot);
        work.combine(r, 1, pr, factor);
      }
      // Column pc now holds only the pivot, so clearing the rest of the pivot row by column
      // operations touches nothing else.
      work.drop_row(pr);
      ++units;
      continue;
    }
    // No unit entry anywhere: reduce around the smallest entry with Euclidean steps.
    const auto [pr, pc] = work.smallest_entry();
    const mpz_class pivot = *work.find(pr, pc);
    bool remainder = false;
    for (std::size_t r : work.rows_in(pc)) {
      if (r == pr) continue;
      mpz_class q;
      mpz_tdiv_q(q.get_mpz_t(), work.find(r, pc)->get_mpz_t(), pivot.get_mpz_t());
      if (q != 0) work.combine(r, 1, pr, -q);
      if (work.find(r, pc) != nullptr) remainder = true;
    }
    if (remainder) continue;
    const auto pivot_row = work.row(pr);
    for (const auto& [c, v] : pivot_row) {
      if (c == pc) continue;
      mpz_class rem;
      mpz_tdiv_r(rem.get_mpz_t(), v.get_mpz_t(), pivot.get_mpz_t());
      work.set_entry(pr, c, rem);
      if (rem != 0) remainder = true;
    }
    if (remainder) continue;
    diagonal.push_back(abs(pivot));
    work.drop_row(pr);
  }

  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    for (std::size_t j = i + 1; j < diagonal.size(); ++j) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), diagonal[i].get_mpz_t(), diagonal[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), diagonal[i].get_mpz_t(), diagonal[j].get_mpz_t());
      diagonal[i] = g;
      diagonal[j] = l;
    }
  }
  std::vector<mpz_class> factors(units, mpz_class(1));
  factors.insert(factors.end(), diagonal.begin(), diagonal.end());
  std::sort(factors.begin(), factors.end());
  return factors;
}

std::vector<mpz_class> torsion_coefficients(const SparseIntMatrix& m) {
  std::vector<mpz_class> out;
  for (auto& d : smith_normal_form(m))
    if (d > 1) out.push_back(d);
  return out;
}

}  // namespace confsink
