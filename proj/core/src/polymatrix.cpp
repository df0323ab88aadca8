#include "coprime/polymatrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace coprime {

PolyMatrix::PolyMatrix(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (!field_) throw std::invalid_argument("null field");
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  entries_.assign(static_cast<std::size_t>(rows) * cols, Poly(field_));
}

PolyMatrix PolyMatrix::identity(FieldPtr field, int n) {
  PolyMatrix m(std::move(field), n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Poly::one(m.field());
  return m;
}

const Poly& PolyMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
  return entries_[static_cast<std::size_t>(r) * cols_ + c];
}

Poly& PolyMatrix::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
  return entries_[static_cast<std::size_t>(r) * cols_ + c];
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in product");
  PolyMatrix out(field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Poly& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        out.at(i, j) = out.at(i, j) + a * o.at(k, j);
    }
  return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch");
  PolyMatrix out(field_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) - o.at(i, j);
  return out;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix out(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

PolyMatrix PolyMatrix::submatrix(int r0, int r1, int c0, int c1) const {
  if (r0 < 0 || r1 > rows_ || c0 < 0 || c1 > cols_ || r0 > r1 || c0 > c1)
    throw std::out_of_range("submatrix bounds");
  PolyMatrix out(field_, r1 - r0, c1 - c0);
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) out.at(i - r0, j - c0) = at(i, j);
  return out;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Poly& p) { return p.is_zero(); });
}

std::string PolyMatrix::str() const {
  std::string out;
  for (int i = 0; i < rows_; ++i) {
    out += i == 0 ? "[" : " ";
    out += "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) out += ", ";
      out += at(i, j).str();
    }
    out += i + 1 == rows_ ? "]]" : "]\n";
  }
  return out;
}

Poly det_poly(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const int n = m.rows();
  const FieldPtr& F = m.field();
  if (n == 0) return Poly::one(F);

  // Bareiss one-step fraction-free elimination: after step k, entry (i,j)
  // holds the (k+2)-minor of the (swap-adjusted) input spanned by rows/cols
  // {0..k, i/j}; each division by the previous pivot is exact in F[z].
  std::vector<Poly> w;
  w.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w.push_back(m.at(i, j));
  auto e = [&](int i, int j) -> Poly& { return w[static_cast<std::size_t>(i) * n + j]; };

  bool negate = false;
  Poly prev = Poly::one(F);
  for (int k = 0; k + 1 < n; ++k) {
    if (e(k, k).is_zero()) {
      int pivot = -1;
      for (int i = k + 1; i < n && pivot < 0; ++i)
        if (!e(i, k).is_zero()) pivot = i;
      if (pivot < 0) return Poly(F);  // whole column zero below the diagonal
      for (int j = 0; j < n; ++j) std::swap(e(k, j), e(pivot, j));
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        auto [quot, rem] = divmod(e(k, k) * e(i, j) - e(i, k) * e(k, j), prev);
        if (!rem.is_zero()) throw std::logic_error("fraction-free elimination lost exactness");
        e(i, j) = std::move(quot);
      }
    prev = e(k, k);
  }
  Poly det = e(n - 1, n - 1);
  if (negate) det = det * m.field()->neg(1);
  return det;
}

std::vector<Poly> fullsize_minors(const PolyMatrix& m) {
  const int p = m.rows(), n = m.cols();
  if (p > n) throw std::invalid_argument("fullsize_minors needs rows <= cols");
  std::vector<int> sel(p);
  for (int i = 0; i < p; ++i) sel[i] = i;
  std::vector<Poly> out;
  while (true) {
    PolyMatrix sub(m.field(), p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) sub.at(i, j) = m.at(i, sel[j]);
    out.push_back(det_poly(sub));
    // next column subset in lexicographic order
    int i = p - 1;
    while (i >= 0 && sel[i] == n - p + i) --i;
    if (i < 0) break;
    ++sel[i];
    for (int j = i + 1; j < p; ++j) sel[j] = sel[j - 1] + 1;
  }
  return out;
}

bool is_left_prime_minors(const PolyMatrix& m) {
  const int p = m.rows(), n = m.cols();
  if (p > n) throw std::invalid_argument("left primeness needs rows <= cols");
  if (p == 0) return true;
  std::vector<int> sel(p);
  for (int i = 0; i < p; ++i) sel[i] = i;
  Poly g(m.field());
  while (true) {
    PolyMatrix sub(m.field(), p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) sub.at(i, j) = m.at(i, sel[j]);
    Poly d = det_poly(sub);
    if (!d.is_zero()) {
      g = g.is_zero() ? monic(d) : gcd_monic(g, d);
      if (g.is_one()) return true;
    }
    int i = p - 1;
    while (i >= 0 && sel[i] == n - p + i) --i;
    if (i < 0) break;
    ++sel[i];
    for (int j = i + 1; j < p; ++j) sel[j] = sel[j - 1] + 1;
  }
  return false;  // gcd of the minors is zero or has positive degree
}

HermiteResult hermite_form(const PolyMatrix& m, HermiteSide side) {
  if (side == HermiteSide::ColumnOps) {
    HermiteResult r = hermite_form(m.transpose(), HermiteSide::RowOps);
    return {r.h.transpose(), r.u.transpose()};
  }
  const int rows = m.rows(), cols = m.cols();
  const FieldPtr& F = m.field();
  PolyMatrix h = m;
  PolyMatrix u = PolyMatrix::identity(F, rows);

  auto add_row_multiple = [&](PolyMatrix& mat, int dst, int src, const Poly& f) {
    for (int j = 0; j < mat.cols(); ++j)
      mat.at(dst, j) = mat.at(dst, j) - f * mat.at(src, j);
  };
  auto swap_rows = [&](PolyMatrix& mat, int a, int b) {
    for (int j = 0; j < mat.cols(); ++j) std::swap(mat.at(a, j), mat.at(b, j));
  };
  auto scale_row = [&](PolyMatrix& mat, int r, std::uint32_t c) {
    for (int j = 0; j < mat.cols(); ++j) mat.at(r, j) = mat.at(r, j) * c;
  };

  int cur = 0;
  for (int col = 0; col < cols && cur < rows; ++col) {
    // Shrink the column below `cur` by Euclidean steps until one nonzero
    // entry is left; re-select the pivot (lowest degree, lowest row) each
    // round so the loop terminates and the result is deterministic.
    while (true) {
      int pivot = -1;
      for (int r = cur; r < rows; ++r)
        if (!h.at(r, col).is_zero() &&
            (pivot < 0 || h.at(r, col).degree() < h.at(pivot, col).degree()))
          pivot = r;
      if (pivot < 0) break;  // column has no pivot; move right
      if (pivot != cur) {
        swap_rows(h, cur, pivot);
        swap_rows(u, cur, pivot);
      }
      bool reduced_all = true;
      for (int r = cur + 1; r < rows; ++r) {
        if (h.at(r, col).is_zero()) continue;
        Poly q = h.at(r, col) / h.at(cur, col);
        add_row_multiple(h, r, cur, q);
        add_row_multiple(u, r, cur, q);
        if (!h.at(r, col).is_zero()) reduced_all = false;  // remainder left
      }
      if (reduced_all) break;
    }
    if (h.at(cur, col).is_zero()) continue;
    // Monic pivot, then reduce the entries above it.
    const std::uint32_t scale = F->inv(h.at(cur, col).leading());
    if (scale != 1) {
      scale_row(h, cur, scale);
      scale_row(u, cur, scale);
    }
    for (int r = 0; r < cur; ++r) {
      if (h.at(r, col).degree() < h.at(cur, col).degree()) continue;
      Poly q = h.at(r, col) / h.at(cur, col);
      add_row_multiple(h, r, cur, q);
      add_row_multiple(u, r, cur, q);
    }
    ++cur;
  }
  return {std::move(h), std::move(u)};
}

bool is_unimodular(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("unimodularity of non-square matrix");
  Poly d = det_poly(m);
  return !d.is_zero() && d.is_constant();
}

bool is_left_prime_hermite(const PolyMatrix& m) {
  const int p = m.rows();
  if (p > m.cols()) throw std::invalid_argument("left primeness needs rows <= cols");
  if (p == 0) return true;
  PolyMatrix h = hermite_form(m, HermiteSide::ColumnOps).h;
  // Column echelon: nonzero columns lead; full row rank demands p of them,
  // and left primeness additionally demands the p x p block be unimodular.
  for (int j = 0; j < p; ++j) {
    bool nonzero = false;
    for (int i = 0; i < p; ++i) nonzero = nonzero || !h.at(i, j).is_zero();
    if (!nonzero) return false;
  }
  return is_unimodular(h.submatrix(0, p, 0, p));
}

bool is_left_prime(const PolyMatrix& m) {
  // The minor census is the definitional route but explodes combinatorially;
  // beyond C(12,6) minors the echelon route wins.
  return m.cols() <= 12 ? is_left_prime_minors(m) : is_left_prime_hermite(m);
}

namespace {

// Classical adjugate; fine at the small sizes gcld verification runs at.
PolyMatrix adjugate(const PolyMatrix& m) {
  const int n = m.rows();
  PolyMatrix adj(m.field(), n, n);
  const std::uint32_t minus1 = m.field()->neg(1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      PolyMatrix sub(m.field(), n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          sub.at(rr, cc++) = m.at(r, c);
        }
        ++rr;
      }
      Poly cof = det_poly(sub);
      if ((i + j) % 2 == 1) cof = cof * minus1;
      adj.at(j, i) = std::move(cof);  // transposed cofactor
    }
  return adj;
}

// Does g left-divide h exactly, i.e. is g^{-1} h polynomial?
bool left_divides(const PolyMatrix& g, const PolyMatrix& h, const Poly& det_g) {
  PolyMatrix scaled = adjugate(g) * h;  // det(g) * g^{-1} * h
  for (int i = 0; i < scaled.rows(); ++i)
    for (int j = 0; j < scaled.cols(); ++j)
      if (!divmod(scaled.at(i, j), det_g).second.is_zero()) return false;
  return true;
}

}  // namespace

PolyMatrix gcld(const std::vector<PolyMatrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("gcld of an empty family");
  const int p = blocks.front().rows();
  const FieldPtr& F = blocks.front().field();
  int total_cols = 0;
  for (const PolyMatrix& b : blocks) {
    if (b.rows() != p) throw std::invalid_argument("gcld blocks must share the row count");
    total_cols += b.cols();
  }
  PolyMatrix concat(F, p, total_cols);
  int off = 0;
  for (const PolyMatrix& b : blocks) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < b.cols(); ++j) concat.at(i, off + j) = b.at(i, j);
    off += b.cols();
  }
  PolyMatrix h = hermite_form(concat, HermiteSide::ColumnOps).h;
  for (int j = 0; j < p; ++j) {
    bool nonzero = false;
    for (int i = 0; i < p; ++i) nonzero = nonzero || !h.at(i, j).is_zero();
    if (!nonzero)
      throw std::domain_error("gcld undefined: concatenation is row-rank deficient");
  }
  PolyMatrix g = h.submatrix(0, p, 0, p);
  Poly dg = det_poly(g);
  if (!dg.is_zero() && dg.is_constant()) return PolyMatrix::identity(F, p);
  for (const PolyMatrix& b : blocks)
    if (!left_divides(g, b, dg)) throw std::logic_error("gcld does not divide an input");
  return g;
}

LcrmResult lcrm(const PolyMatrix& a, const PolyMatrix& b) {
  const int m = a.rows();
  if (a.cols() != m || b.rows() != m || b.cols() != m)
    throw std::invalid_argument("lcrm needs square matrices of equal size");
  Poly da = det_poly(a), db = det_poly(b);
  if (da.is_zero() || db.is_zero()) throw std::domain_error("lcrm of a singular matrix");

  const std::uint32_t minus1 = a.field()->neg(1);
  PolyMatrix wide(a.field(), m, 2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      wide.at(i, j) = a.at(i, j);
      wide.at(i, m + j) = b.at(i, j) * minus1;
    }
  // [A  -B] U = [G  0]: the right columns of U span the right kernel of the
  // wide matrix, so A U12 - B U22 = 0 gives the common multiple A U12 = B U22.
  HermiteResult hr = hermite_form(wide, HermiteSide::ColumnOps);
  LcrmResult out{PolyMatrix(a.field(), m, m), PolyMatrix(a.field(), m, m),
                 PolyMatrix(a.field(), m, m)};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      out.x.at(i, j) = hr.u.at(i, m + j);
      out.y.at(i, j) = hr.u.at(m + i, m + j);
    }
  out.m = a * out.x;
  if (out.m != b * out.y) throw std::logic_error("lcrm postcondition A*X = B*Y failed");
  Poly dm = det_poly(out.m);
  if (dm.is_zero()) throw std::logic_error("lcrm produced a singular multiple");
  if (dm.degree() > da.degree() + db.degree())
    throw std::logic_error("lcrm exceeds the determinant-degree bound");
  return out;
}

PolyMatrix lcrm_many(const std::vector<PolyMatrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("lcrm of an empty family");
  PolyMatrix acc = blocks.front();
  if (det_poly(acc).is_zero()) throw std::domain_error("lcrm of a singular matrix");
  for (std::size_t i = 1; i < blocks.size(); ++i) acc = lcrm(acc, blocks[i]).m;
  return acc;
}

ChainMatrix build_block_chain(const std::vector<PolyMatrix>& blocks) {
  const int n = static_cast<int>(blocks.size());
  if (n < 2) throw std::invalid_argument("block chain needs at least two blocks");
  const int m = blocks.front().rows();
  const FieldPtr& F = blocks.front().field();
  for (const PolyMatrix& b : blocks)
    if (b.rows() != m || b.cols() != m || !b.field()->same_field(*F))
      throw std::invalid_argument("block chain needs equal square blocks over one field");
  ChainMatrix chain{blocks, PolyMatrix(F, (n - 1) * m, n * m)};
  for (int i = 0; i + 1 < n; ++i)
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        chain.assembled.at(i * m + r, i * m + c) = blocks[i].at(r, c);
        chain.assembled.at(i * m + r, (i + 1) * m + c) = blocks[i + 1].at(r, c);
      }
  return chain;
}

bool is_mutually_left_coprime_block(const std::vector<PolyMatrix>& blocks) {
  for (const PolyMatrix& b : blocks)
    if (det_poly(b).is_zero())
      throw std::domain_error("mutual left coprimality assumes nonsingular blocks");
  return is_left_prime(build_block_chain(blocks).assembled);
}

bool is_mutually_left_coprime_direct(const std::vector<PolyMatrix>& blocks) {
  const int n = static_cast<int>(blocks.size());
  if (n < 2) throw std::invalid_argument("need at least two blocks");
  const int m = blocks.front().rows();
  for (const PolyMatrix& b : blocks)
    if (det_poly(b).is_zero())
      throw std::domain_error("mutual left coprimality assumes nonsingular blocks");
  for (int i = 0; i < n; ++i) {
    std::vector<PolyMatrix> rest;
    rest.reserve(n - 1);
    for (int j = 0; j < n; ++j)
      if (j != i) rest.push_back(blocks[j]);
    PolyMatrix multiple = lcrm_many(rest);
    PolyMatrix pair(blocks[i].field(), m, 2 * m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        pair.at(r, c) = blocks[i].at(r, c);
        pair.at(r, m + c) = multiple.at(r, c);
      }
    if (!is_left_prime(pair)) return false;
  }
  return true;
}

ConstMatrix::ConstMatrix(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (!field_) throw std::invalid_argument("null field");
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  entries_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

std::uint32_t ConstMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
  return entries_[static_cast<std::size_t>(r) * cols_ + c];
}

void ConstMatrix::set(int r, int c, std::uint32_t v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
  if (v >= field_->order()) throw std::out_of_range("element id out of range");
  entries_[static_cast<std::size_t>(r) * cols_ + c] = v;
}

int const_rank(ConstMatrix m) {
  const Field& F = *m.field();
  const int rows = m.rows(), cols = m.cols();
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows && pivot < 0; ++r)
      if (m.at(r, col) != 0) pivot = r;
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = col; j < cols; ++j) {
        std::uint32_t t = m.at(rank, j);
        m.set(rank, j, m.at(pivot, j));
        m.set(pivot, j, t);
      }
    const std::uint32_t inv = F.inv(m.at(rank, col));
    for (int r = rank + 1; r < rows; ++r) {
      const std::uint32_t factor = F.mul(m.at(r, col), inv);
      if (factor == 0) continue;
      for (int j = col; j < cols; ++j)
        m.set(r, j, F.sub(m.at(r, j), F.mul(factor, m.at(rank, j))));
    }
    ++rank;
  }
  return rank;
}

}  // namespace coprime
