#pragma once

#include "vdf/rational.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace vdf {

/// Element of the lexicographically ordered group Q^n (first coordinate most
/// significant).
class GroupElem {
 public:
  GroupElem() = default;
  explicit GroupElem(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  GroupElem(std::initializer_list<Rational> coords) : coords_(coords) {}

  static GroupElem zero(std::size_t dim) { return GroupElem(std::vector<Rational>(dim, Rational(0))); }
  /// (q, 0, ..., 0)
  static GroupElem scalar(std::size_t dim, const Rational& q);

  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<Rational>& coords() const noexcept { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const noexcept;
  /// Index of the first nonzero coordinate, or dim() for zero.
  std::size_t leading_index() const noexcept;

  GroupElem& operator+=(const GroupElem& other);
  GroupElem& operator-=(const GroupElem& other);
  GroupElem operator-() const;
  GroupElem& operator*=(const Rational& q);

  friend GroupElem operator+(GroupElem a, const GroupElem& b) { return a += b; }
  friend GroupElem operator-(GroupElem a, const GroupElem& b) { return a -= b; }
  friend GroupElem operator*(const Rational& q, GroupElem a) { return a *= q; }
  friend GroupElem operator*(GroupElem a, const Rational& q) { return a *= q; }
  friend GroupElem operator/(GroupElem a, const Rational& q);

  /// Lexicographic comparison; throws DimensionMismatch across dimensions.
  friend std::strong_ordering operator<=>(const GroupElem& a, const GroupElem& b);
  friend bool operator==(const GroupElem& a, const GroupElem& b);

  /// "(p/q, r/s, ...)"; one-dimensional elements print as "(p/q)".
  std::string str() const;

 private:
  std::vector<Rational> coords_;
};

std::strong_ordering compare(const GroupElem& a, const GroupElem& b);

/// Smallest k >= 1 with k * step >= target for step > 0, or nullopt when no
/// natural multiple of step reaches target (target lies in a more significant
/// archimedean class than step).
std::optional<unsigned long> steps_to_reach(const GroupElem& step, const GroupElem& target);

/// Integer-coefficient polynomial in sigma: coeffs[k] multiplies sigma^k.
using SigmaOperator = std::vector<long>;

/// Order-preserving automorphism of Q^n given by a lower-triangular matrix with
/// strictly positive diagonal.
class GroupAut {
 public:
  /// Identity on Q^1.
  GroupAut() : GroupAut(identity(1)) {}
  explicit GroupAut(std::vector<std::vector<Rational>> matrix);

  static GroupAut identity(std::size_t dim);
  /// gamma -> q * gamma, q > 0.
  static GroupAut scaling(std::size_t dim, const Rational& q);

  std::size_t dim() const noexcept { return matrix_.size(); }
  const std::vector<std::vector<Rational>>& matrix() const noexcept { return matrix_; }
  const std::vector<std::vector<Rational>>& inverse_matrix() const noexcept { return inverse_; }
  bool is_identity() const noexcept { return identity_; }

  /// sigma^k(gamma); negative k uses the inverse matrix.
  GroupElem apply(const GroupElem& gamma, long k = 1) const;
  /// sum_k tau[k] * sigma^k(gamma).
  GroupElem apply(const SigmaOperator& tau, const GroupElem& gamma) const;

  friend bool operator==(const GroupAut& a, const GroupAut& b) { return a.matrix_ == b.matrix_; }

 private:
  std::vector<std::vector<Rational>> matrix_;
  std::vector<std::vector<Rational>> inverse_;
  bool identity_ = false;
};

}  // namespace vdf
