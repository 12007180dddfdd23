#include "vdf/ordgroup.hpp"

#include "vdf/error.hpp"

namespace vdf {

namespace {

void require_same_dim(const GroupElem& a, const GroupElem& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::DimensionMismatch,
                "group elements of dimension " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
}

using Matrix = std::vector<std::vector<Rational>>;

GroupElem mat_vec(const Matrix& m, const GroupElem& v) {
  if (m.size() != v.dim())
    throw Error(ErrorKind::DimensionMismatch, "automorphism of dimension " + std::to_string(m.size()) +
                                                  " applied to element of dimension " + std::to_string(v.dim()));
  std::vector<Rational> out(v.dim());
  for (std::size_t i = 0; i < m.size(); ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j <= i; ++j) acc += m[i][j] * v[j];
    out[i] = acc;
  }
  return GroupElem(std::move(out));
}

// Forward substitution on a lower-triangular matrix.
Matrix lower_inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = col; i < n; ++i) {
      Rational acc = (i == col) ? Rational(1) : Rational(0);
      for (std::size_t j = col; j < i; ++j) acc -= m[i][j] * inv[j][col];
      inv[i][col] = acc / m[i][i];
    }
  }
  return inv;
}

}  // namespace

GroupElem GroupElem::scalar(std::size_t dim, const Rational& q) {
  auto g = zero(dim);
  if (dim > 0) g.coords_[0] = q;
  return g;
}

bool GroupElem::is_zero() const noexcept { return leading_index() == dim(); }

std::size_t GroupElem::leading_index() const noexcept {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] != 0) return i;
  return coords_.size();
}

GroupElem& GroupElem::operator+=(const GroupElem& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

GroupElem& GroupElem::operator-=(const GroupElem& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

GroupElem GroupElem::operator-() const {
  GroupElem out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

GroupElem& GroupElem::operator*=(const Rational& q) {
  for (auto& c : coords_) c *= q;
  return *this;
}

GroupElem operator/(GroupElem a, const Rational& q) {
  if (q == 0) throw Error(ErrorKind::ZeroDivision, "group element divided by zero");
  for (auto& c : a.coords_) c /= q;
  return a;
}

std::strong_ordering operator<=>(const GroupElem& a, const GroupElem& b) {
  require_same_dim(a, b);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    int c = cmp(a.coords_[i], b.coords_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

bool operator==(const GroupElem& a, const GroupElem& b) { return (a <=> b) == 0; }

std::strong_ordering compare(const GroupElem& a, const GroupElem& b) { return a <=> b; }

std::string GroupElem::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ", ";
    out += to_string(coords_[i]);
  }
  return out + ")";
}

std::optional<unsigned long> steps_to_reach(const GroupElem& step, const GroupElem& target) {
  if (step.is_zero() || step < GroupElem::zero(step.dim()))
    throw Error(ErrorKind::DomainError, "steps_to_reach requires a positive step");
  if (target <= step) return 1UL;
  const std::size_t si = step.leading_index();
  const std::size_t ti = target.leading_index();
  if (si < ti) return 1UL;
  if (si > ti) return std::nullopt;
  Integer k = ceil(Rational(target[ti] / step[si]));
  if (k < 1) k = 1;
  if (!k.fits_ulong_p()) return std::nullopt;
  unsigned long steps = k.get_ui();
  if (Rational(static_cast<long>(steps)) * step < target) ++steps;
  return steps;
}

GroupAut::GroupAut(Matrix matrix) : matrix_(std::move(matrix)) {
  const std::size_t n = matrix_.size();
  if (n == 0) throw Error(ErrorKind::DomainError, "automorphism of the zero group");
  identity_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix_[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "automorphism matrix is not square");
    if (matrix_[i][i] <= 0)
      throw Error(ErrorKind::DomainError, "automorphism diagonal entries must be strictly positive");
    for (std::size_t j = i + 1; j < n; ++j)
      if (matrix_[i][j] != 0) throw Error(ErrorKind::DomainError, "automorphism matrix must be lower-triangular");
    for (std::size_t j = 0; j < n; ++j)
      if (matrix_[i][j] != (i == j ? 1 : 0)) identity_ = false;
  }
  inverse_ = lower_inverse(matrix_);
}

GroupAut GroupAut::identity(std::size_t dim) { return scaling(dim, 1); }

GroupAut GroupAut::scaling(std::size_t dim, const Rational& q) {
  Matrix m(dim, std::vector<Rational>(dim, Rational(0)));
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = q;
  return GroupAut(std::move(m));
}

GroupElem GroupAut::apply(const GroupElem& gamma, long k) const {
  if (gamma.dim() != dim())
    throw Error(ErrorKind::DimensionMismatch, "automorphism of dimension " + std::to_string(dim()) +
                                                  " applied to element of dimension " + std::to_string(gamma.dim()));
  if (identity_ || k == 0) return gamma;
  const Matrix& m = k > 0 ? matrix_ : inverse_;
  GroupElem out = gamma;
  for (long i = 0; i < (k > 0 ? k : -k); ++i) out = mat_vec(m, out);
  return out;
}

GroupElem GroupAut::apply(const SigmaOperator& tau, const GroupElem& gamma) const {
  GroupElem acc = GroupElem::zero(gamma.dim());
  GroupElem power = gamma;
  for (std::size_t k = 0; k < tau.size(); ++k) {
    if (k > 0) power = apply(power, 1);
    if (tau[k] != 0) acc += Rational(tau[k]) * power;
  }
  return acc;
}

}  // namespace vdf
