#pragma once

#include "coprime/poly.hpp"

namespace coprime {

/// Dense matrix of polynomials over one finite field, row-major value type.
class PolyMatrix {
 public:
  PolyMatrix(FieldPtr field, int rows, int cols);  // all-zero entries
  static PolyMatrix identity(FieldPtr field, int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldPtr& field() const { return field_; }

  const Poly& at(int r, int c) const;
  Poly& at(int r, int c);

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  bool operator==(const PolyMatrix& o) const;
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  PolyMatrix transpose() const;
  /// Rows [r0, r1) and columns [c0, c1) as a new matrix.
  PolyMatrix submatrix(int r0, int r1, int c0, int c1) const;

  bool is_zero() const;
  std::string str() const;

 private:
  FieldPtr field_;
  int rows_, cols_;
  std::vector<Poly> entries_;
};

/// Determinant of a square matrix by fraction-free (Bareiss) elimination:
/// every intermediate division is exact in the polynomial ring.
Poly det_poly(const PolyMatrix& m);

/// All maximal minors of a p x n matrix with p <= n: determinants of the
/// p-column submatrices, ordered by lexicographic column subset.
std::vector<Poly> fullsize_minors(const PolyMatrix& m);

/// Left primeness of a p x n matrix, p <= n: no common nonunit left divisor,
/// equivalently the maximal minors have gcd 1, equivalently the Hermite form
/// under column operations is [I 0]. Two interchangeable backends plus a
/// dispatching front door (minor enumeration up to 12 columns, Hermite above).
bool is_left_prime(const PolyMatrix& m);
bool is_left_prime_minors(const PolyMatrix& m);
bool is_left_prime_hermite(const PolyMatrix& m);

/// Which side elementary operations act on when computing a Hermite form.
enum class HermiteSide { RowOps, ColumnOps };

/// H = U * M (RowOps) or H = M * U (ColumnOps) with U unimodular.
///
/// RowOps produces a lower-left echelon form: pivot rows are selected by
/// (lowest degree, then lowest row index), pivots are made monic, entries
/// above each pivot are reduced to degree < deg(pivot), and zero rows sink to
/// the bottom. ColumnOps is the transpose picture (zero columns at the
/// right). The pivot rule makes the output a deterministic function of the
/// input.
struct HermiteResult {
  PolyMatrix h;
  PolyMatrix u;
};
HermiteResult hermite_form(const PolyMatrix& m, HermiteSide side);

/// True when det is a nonzero constant.
bool is_unimodular(const PolyMatrix& m);

/// Greatest common left divisor of p x m_i matrices sharing a row count:
/// the p x p block G with [H1 ... HN] = G * [B1 ... BN] and G maximal, read
/// off a column-operation Hermite form of the concatenation. Normalised to
/// the identity when unimodular (i.e. when the family is mutually left
/// coprime in the aggregate sense). Throws unless the concatenation has full
/// row rank.
PolyMatrix gcld(const std::vector<PolyMatrix>& blocks);

/// Least common right multiple of two nonsingular m x m matrices:
/// M = A*X = B*Y of minimal degree, computed from a column-operation Hermite
/// form [A  -B] U = [G  0] — the right column block of U gives (X; Y).
struct LcrmResult {
  PolyMatrix m;  // the multiple itself
  PolyMatrix x, y;
};
LcrmResult lcrm(const PolyMatrix& a, const PolyMatrix& b);

/// Fold lcrm over a family (at least one matrix).
PolyMatrix lcrm_many(const std::vector<PolyMatrix>& blocks);

/// The staircase block matrix encoding mutual coprimality of N square m x m
/// blocks D1..DN: block row i (of N-1) carries D_i at block column i and
/// D_{i+1} at block column i+1, zero elsewhere:
///
///   [ D1 D2           ]
///   [    D2 D3        ]
///   [        ...      ]
///   [      D_{N-1} DN ]
///
/// (Interior block columns repeat their block across two rows.) Requires
/// N >= 2 and square blocks of equal size over one field.
struct ChainMatrix {
  std::vector<PolyMatrix> blocks;
  PolyMatrix assembled;
};
ChainMatrix build_block_chain(const std::vector<PolyMatrix>& blocks);

/// Mutual left coprimality of N >= 2 blocks, decided by left primeness of
/// the staircase chain. Nonsingularity of every block is asserted (the
/// defining notion assumes it; enumeration code that wants the bare chain
/// criterion on arbitrary tuples checks left primeness itself).
bool is_mutually_left_coprime_block(const std::vector<PolyMatrix>& blocks);

/// The same property decided directly from its definition: for each i, the
/// block D_i must be left coprime with the least common right multiple of all
/// the other blocks — i.e. the m x 2m concatenation [D_i  lcrm(rest)] is left
/// prime. Much slower than the chain criterion; reference oracle only.
bool is_mutually_left_coprime_direct(const std::vector<PolyMatrix>& blocks);

/// Constant matrix over a finite field with Gaussian-elimination rank.
class ConstMatrix {
 public:
  ConstMatrix(FieldPtr field, int rows, int cols);
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldPtr& field() const { return field_; }
  std::uint32_t at(int r, int c) const;
  void set(int r, int c, std::uint32_t v);

 private:
  FieldPtr field_;
  int rows_, cols_;
  std::vector<std::uint32_t> entries_;
};

int const_rank(ConstMatrix m);  // by value: eliminates in place

}  // namespace coprime
