#pragma once

// Exact intersection calculus on divisor classes through towers of blow-ups.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibra/error.hpp"
#include "fibra/rational.hpp"

namespace fibra {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Rational coefficient vector over a lattice basis.
struct DivisorClass {
  std::vector<Rational> coefficients;

  DivisorClass() = default;
  explicit DivisorClass(std::size_t rank) : coefficients(rank, Rational(0)) {}
  explicit DivisorClass(std::vector<Rational> c) : coefficients(std::move(c)) {}

  static DivisorClass unit(std::size_t rank, std::size_t index) {
    DivisorClass d(rank);
    d.coefficients.at(index) = 1;
    return d;
  }

  std::size_t size() const { return coefficients.size(); }
  const Rational& operator[](std::size_t i) const { return coefficients[i]; }
  Rational& operator[](std::size_t i) { return coefficients[i]; }

  DivisorClass& operator+=(const DivisorClass& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) coefficients[i] += o.coefficients[i];
    return *this;
  }
  DivisorClass& operator-=(const DivisorClass& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) coefficients[i] -= o.coefficients[i];
    return *this;
  }
  DivisorClass& operator*=(const Rational& s) {
    for (auto& c : coefficients) c *= s;
    return *this;
  }
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
  friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.coefficients == b.coefficients; }

  bool is_zero() const {
    for (const auto& c : coefficients)
      if (c != 0) return false;
    return true;
  }

 private:
  void check_same(const DivisorClass& o) const {
    if (o.size() != size()) throw InputError("divisor classes over different lattices");
  }
};

/// Free integer lattice with a symmetric pairing. Immutable; blow_up returns a new lattice.
class IntersectionLattice {
 public:
  IntersectionLattice() = default;

  IntersectionLattice(std::vector<std::string> basis, IntMatrix pairing, int tower_depth = 0)
      : basis_(std::move(basis)), pairing_(std::move(pairing)), tower_depth_(tower_depth) {
    if (pairing_.size() != basis_.size()) throw InputError("pairing matrix does not match basis size");
    for (std::size_t i = 0; i < pairing_.size(); ++i) {
      if (pairing_[i].size() != basis_.size()) throw InputError("pairing matrix is not square");
      for (std::size_t j = 0; j < i; ++j)
        if (pairing_[i][j] != pairing_[j][i]) throw InputError("pairing matrix is not symmetric");
    }
  }

  std::size_t rank() const { return basis_.size(); }
  const std::vector<std::string>& basis() const { return basis_; }
  const IntMatrix& pairing() const { return pairing_; }
  std::int64_t pairing(std::size_t i, std::size_t j) const { return pairing_.at(i).at(j); }
  int tower_depth() const { return tower_depth_; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] == label) return i;
    return std::nullopt;
  }

  DivisorClass basis_class(std::size_t i) const { return DivisorClass::unit(rank(), i); }

 private:
  std::vector<std::string> basis_;
  IntMatrix pairing_;
  int tower_depth_ = 0;
};

/// a^T * pairing * b.
inline Rational pair(const IntersectionLattice& lattice, const DivisorClass& a, const DivisorClass& b) {
  const std::size_t n = lattice.rank();
  if (a.size() != n || b.size() != n) throw InputError("divisor class dimension does not match lattice rank");
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0 || lattice.pairing(i, j) == 0) continue;
      row += Rational(lattice.pairing(i, j)) * b[j];
    }
    total += a[i] * row;
  }
  return total;
}

/// Total transform of a class under a blow-up: the same coefficients, padded with zeros.
inline DivisorClass pullback(const DivisorClass& d, std::size_t new_rank) {
  if (d.size() > new_rank) throw InputError("pullback to a smaller lattice");
  DivisorClass out = d;
  out.coefficients.resize(new_rank, Rational(0));
  return out;
}

struct BlowUpResult {
  IntersectionLattice lattice;
  DivisorClass exceptional;
  /// Strict transform of each input class, sigma^*D - m e.
  std::vector<DivisorClass> strict_transforms;
};

/// Blow up a point through which the given classes pass with the given multiplicities.
inline BlowUpResult blow_up(const IntersectionLattice& lattice,
                            const std::vector<std::pair<DivisorClass, std::int64_t>>& through_center,
                            std::string label) {
  const std::size_t n = lattice.rank();
  std::vector<std::string> basis = lattice.basis();
  if (lattice.index_of(label)) throw InputError("duplicate basis label '" + label + "'");
  basis.push_back(std::move(label));
  IntMatrix m = lattice.pairing();
  for (auto& row : m) row.push_back(0);
  m.emplace_back(n + 1, 0);
  m[n][n] = -1;

  BlowUpResult result{IntersectionLattice(std::move(basis), std::move(m), lattice.tower_depth() + 1),
                      DivisorClass::unit(n + 1, n), {}};
  for (const auto& [cls, mult] : through_center) {
    if (cls.size() != n) throw InputError("divisor class dimension does not match lattice rank");
    if (mult < 0) throw InputError("negative multiplicity at blow-up center");
    DivisorClass strict = pullback(cls, n + 1);
    strict[n] -= mult;
    result.strict_transforms.push_back(std::move(strict));
  }
  return result;
}

/// Dense exact solve of A x = b. Throws StructuralError if A is singular.
inline std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InputError("right-hand side dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw StructuralError("singular linear system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// Symmetric elimination without pivoting: negative definite iff every pivot is negative.
inline bool is_negative_definite(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] >= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

struct ExceptionalCurve {
  std::string label;
  int genus = 0;  // arithmetic genus p_a
};

/// Curves contracted by a resolution together with their mutual intersection matrix.
struct ExceptionalConfig {
  std::vector<ExceptionalCurve> curves;
  IntMatrix pairing;

  /// Restrict a lattice pairing to the given classes.
  static ExceptionalConfig from_lattice(const IntersectionLattice& lattice,
                                        const std::vector<std::pair<ExceptionalCurve, DivisorClass>>& curves) {
    ExceptionalConfig cfg;
    const std::size_t n = curves.size();
    cfg.pairing.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      cfg.curves.push_back(curves[i].first);
      for (std::size_t j = 0; j < n; ++j)
        cfg.pairing[i][j] = to_int64(pair(lattice, curves[i].second, curves[j].second));
    }
    return cfg;
  }

  /// Chain of n smooth rational (-2)-curves, the resolution graph of an A_n point.
  static ExceptionalConfig a_chain(std::size_t n) {
    ExceptionalConfig cfg;
    cfg.pairing.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      cfg.curves.push_back({"G" + std::to_string(i + 1), 0});
      cfg.pairing[i][i] = -2;
      if (i + 1 < n) cfg.pairing[i][i + 1] = cfg.pairing[i + 1][i] = 1;
    }
    return cfg;
  }
};

/// Rational canonical divisor K = sum alpha_i G_i solving K.G_i + G_i^2 = 2 p_a(G_i) - 2.
/// Coefficients are returned over the configuration's own curve basis.
inline DivisorClass rational_canonical(const ExceptionalConfig& config) {
  const std::size_t n = config.curves.size();
  if (config.pairing.size() != n) throw InputError("exceptional configuration pairing size mismatch");
  if (n == 0) return DivisorClass(0);
  if (!is_negative_definite(config.pairing))
    throw StructuralError("exceptional configuration is not negative definite");
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  std::vector<Rational> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = config.pairing[i][j];
    rhs[i] = Rational(2 * config.curves[i].genus - 2 - config.pairing[i][i]);
  }
  return DivisorClass(solve_linear(std::move(a), std::move(rhs)));
}

}  // namespace fibra
