#include "gkz/curve.hpp"

#include <algorithm>
#include <numeric>

namespace gkz {

std::int64_t CurveMatrix::dot(std::span<const std::int64_t> u) const {
  if (u.size() != entries_.size())
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix");
  std::int64_t s = 0;
  for (std::size_t c = 0; c < u.size(); ++c) s += entries_[c] * u[c];
  return s;
}

Rational CurveMatrix::dot(const RationalVector& v) const {
  if (v.size() != entries_.size())
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix");
  Rational s = 0;
  for (std::size_t c = 0; c < v.size(); ++c) s += make_rational(entries_[c]) * v[c];
  return s;
}

CurveMatrix make_curve(std::span<const std::int64_t> entries) {
  if (entries.size() < 2) throw Error(ErrorCode::TooShort, "a curve matrix needs n >= 2 entries");
  if (entries.front() < 1)
    throw Error(ErrorCode::NotIncreasing, "entries must be positive");
  for (std::size_t c = 1; c < entries.size(); ++c)
    if (entries[c] <= entries[c - 1])
      throw Error(ErrorCode::NotIncreasing, "entries must be strictly increasing");
  std::int64_t g = 0;
  for (auto a : entries) g = std::gcd(g, a);
  if (g != 1) throw Error(ErrorCode::GcdNotOne, "gcd of entries is " + std::to_string(g));

  CurveMatrix out;
  out.entries_.assign(entries.begin(), entries.end());
  out.kind_ = entries.front() == 1 ? CurveKind::Smooth : CurveKind::General;
  return out;
}

CurveMatrix auxiliary_matrix(const CurveMatrix& a) {
  if (a.smooth()) throw Error(ErrorCode::WrongAuxiliaryShape, "auxiliary matrix needs a_1 > 1");
  IntVector e{1};
  e.insert(e.end(), a.entries().begin(), a.entries().end());
  return make_curve(e);
}

CurveMatrix drop_column(const CurveMatrix& a, std::size_t c) {
  if (c >= a.size()) throw Error(ErrorCode::IndexOutOfRange, "column out of range");
  IntVector e;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (k != c) e.push_back(a[k]);
  return make_curve(e);
}

IntVector LatticeBasis::combine(std::span<const std::int64_t> m) const {
  if (m.size() != rows.size())
    throw Error(ErrorCode::DimensionMismatch, "coordinate vector has wrong length");
  IntVector u(dimension(), 0);
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (m[k] != 0)
      for (std::size_t c = 0; c < u.size(); ++c) u[c] += m[k] * rows[k][c];
  return u;
}

namespace {

LatticeBasis smooth_basis(const CurveMatrix& a) {
  const std::size_t n = a.size();
  LatticeBasis b;
  for (std::size_t c = 1; c < n; ++c) {
    IntVector row(n, 0), coord(n, 0);
    if (n >= 3 && c == n - 2) {
      row[0] = a[c];
      row[c] = -1;
      coord[c] = -1;
    } else {
      row[0] = -a[c];
      row[c] = 1;
      coord[c] = 1;
    }
    b.rows.push_back(std::move(row));
    b.coordinates.push_back(std::move(coord));
  }
  return b;
}

// Column-reduce A to (1, 0, ..., 0) by unimodular operations U; the trailing
// columns of U span the kernel and the trailing rows of U^{-1} are coordinates.
LatticeBasis reduced_basis(const CurveMatrix& a) {
  const std::size_t n = a.size();
  IntVector row = a.entries();
  std::vector<IntVector> u(n, IntVector(n, 0)), inv(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = inv[i][i] = 1;

  auto col_sub = [&](std::size_t dst, std::size_t src, std::int64_t t) {
    row[dst] -= t * row[src];
    for (std::size_t r = 0; r < n; ++r) u[r][dst] -= t * u[r][src];
    for (std::size_t c = 0; c < n; ++c) inv[src][c] += t * inv[dst][c];
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    std::swap(row[i], row[j]);
    for (std::size_t r = 0; r < n; ++r) std::swap(u[r][i], u[r][j]);
    std::swap(inv[i], inv[j]);
  };

  for (std::size_t j = 1; j < n; ++j) {
    while (row[j] != 0) {
      col_sub(0, j, row[0] / row[j]);
      col_swap(0, j);
    }
  }
  if (row[0] < 0) {
    row[0] = -row[0];
    for (std::size_t r = 0; r < n; ++r) u[r][0] = -u[r][0];
    for (auto& x : inv[0]) x = -x;
  }

  LatticeBasis b;
  for (std::size_t k = 1; k < n; ++k) {
    IntVector col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = u[r][k];
    b.rows.push_back(std::move(col));
    b.coordinates.push_back(inv[k]);
  }
  return b;
}

}  // namespace

LatticeBasis lattice_basis(const CurveMatrix& a) {
  return a.smooth() ? smooth_basis(a) : reduced_basis(a);
}

std::optional<IntVector> lattice_decompose(const LatticeBasis& basis,
                                           std::span<const std::int64_t> u) {
  if (u.size() != basis.dimension())
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match lattice");
  IntVector m(basis.rank(), 0);
  for (std::size_t k = 0; k < basis.rank(); ++k) {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < u.size(); ++c) s += basis.coordinates[k][c] * u[c];
    m[k] = s;
  }
  IntVector back = basis.combine(m);
  if (!std::equal(back.begin(), back.end(), u.begin())) return std::nullopt;
  return m;
}

SemigroupTable::SemigroupTable(const CurveMatrix& a) {
  // Frobenius number of a gcd-one set is below a_1 * a_n.
  const std::int64_t bound = a[0] * a.last();
  member_.assign(static_cast<std::size_t>(bound + 1), false);
  member_[0] = true;
  for (std::int64_t b = 1; b <= bound; ++b)
    for (auto g : a.entries())
      if (g <= b && member_[static_cast<std::size_t>(b - g)]) {
        member_[static_cast<std::size_t>(b)] = true;
        break;
      }
  frobenius_ = -1;
  for (std::int64_t b = bound; b >= 0; --b)
    if (!member_[static_cast<std::size_t>(b)]) {
      frobenius_ = b;
      break;
    }
}

bool SemigroupTable::contains(const Integer& b) const {
  if (b < 0) return false;
  if (b > frobenius_) return true;
  return member_[b.get_ui()];
}

bool semigroup_member(const CurveMatrix& a, std::int64_t b) {
  return SemigroupTable(a).contains(b);
}

std::int64_t frobenius_number(const CurveMatrix& a) { return SemigroupTable(a).frobenius(); }

namespace {

// reach[k][v]: v is a nonnegative combination of gens[k..].
std::vector<std::vector<bool>> suffix_reach(const IntVector& gens, std::int64_t target) {
  const std::size_t k = gens.size();
  std::vector<std::vector<bool>> reach(k + 1, std::vector<bool>(target + 1, false));
  reach[k][0] = true;
  for (std::size_t i = k; i-- > 0;) {
    for (std::int64_t v = 0; v <= target; ++v) {
      bool ok = reach[i + 1][v];
      if (!ok && v >= gens[i]) ok = reach[i][v - gens[i]];
      reach[i][v] = ok;
    }
  }
  return reach;
}

}  // namespace

std::vector<DeltaExponent> delta_exponents(const CurveMatrix& a) {
  std::vector<DeltaExponent> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    IntVector others;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i) others.push_back(a[j]);
    // Guaranteed to terminate: gcd(a) = 1 makes 1 + delta a_i eventually
    // a large multiple of gcd(others).
    for (std::int64_t delta = 0;; ++delta) {
      const std::int64_t target = 1 + delta * a[i];
      auto reach = suffix_reach(others, target);
      if (!reach[0][target]) continue;
      IntVector rho(others.size(), 0);
      std::int64_t rest = target;
      for (std::size_t k = 0; k < others.size(); ++k) {
        while (!reach[k + 1][rest]) {
          rest -= others[k];
          ++rho[k];
        }
      }
      out.push_back({delta, std::move(rho)});
      break;
    }
  }
  return out;
}

BetaClass beta_class(const SemigroupTable& table, const Rational& beta) {
  if (!is_integer(beta)) return NonInteger{frac(beta)};
  if (table.contains(beta.get_num())) return InSemigroup{};
  return IntegerOutsideSemigroup{};
}

BetaClass beta_class(const CurveMatrix& a, const Rational& beta) {
  return beta_class(SemigroupTable(a), beta);
}

bool isomorphic_parameters(const CurveMatrix& a, const Rational& beta,
                           const Rational& beta_other) {
  SemigroupTable table(a);
  return beta_class(table, beta) == beta_class(table, beta_other);
}

std::string to_string(const BetaClass& c) {
  if (std::holds_alternative<InSemigroup>(c)) return "InSemigroup";
  if (std::holds_alternative<IntegerOutsideSemigroup>(c)) return "IntegerOutsideSemigroup";
  return "NonInteger(" + to_string(std::get<NonInteger>(c).residue) + ")";
}

}  // namespace gkz
