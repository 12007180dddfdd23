#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace vdf {

/// Layout of the variables of a (multivariable) sigma-polynomial: position
/// var * (order + 1) + k of a multi-index holds the exponent of sigma^k(x_var).
struct IndexShape {
  std::size_t nvars = 1;
  std::size_t order = 0;

  std::size_t width() const noexcept { return nvars * (order + 1); }
  std::size_t position(std::size_t var, std::size_t k) const noexcept { return var * (order + 1) + k; }
  std::size_t var_of(std::size_t pos) const noexcept { return pos / (order + 1); }
  std::size_t shift_of(std::size_t pos) const noexcept { return pos % (order + 1); }

  friend bool operator==(const IndexShape&, const IndexShape&) = default;
};

using MultiIndex = std::vector<unsigned>;

inline unsigned total_degree(const MultiIndex& i) {
  unsigned d = 0;
  for (unsigned e : i) d += e;
  return d;
}

inline bool is_zero_index(const MultiIndex& i) { return total_degree(i) == 0; }

/// Componentwise i <= j.
inline bool index_leq(const MultiIndex& i, const MultiIndex& j) {
  for (std::size_t p = 0; p < i.size(); ++p)
    if (i[p] > j[p]) return false;
  return true;
}

inline MultiIndex index_add(MultiIndex i, const MultiIndex& j) {
  for (std::size_t p = 0; p < i.size(); ++p) i[p] += j[p];
  return i;
}

inline MultiIndex index_sub(MultiIndex i, const MultiIndex& j) {
  for (std::size_t p = 0; p < i.size(); ++p) i[p] -= j[p];
  return i;
}

inline MultiIndex unit_index(std::size_t width, std::size_t pos) {
  MultiIndex i(width, 0);
  i[pos] = 1;
  return i;
}

/// Re-embeds a multi-index into a wider shape (more variables or higher order).
inline MultiIndex reshape_index(const MultiIndex& i, const IndexShape& from, const IndexShape& to) {
  MultiIndex out(to.width(), 0);
  for (std::size_t p = 0; p < i.size(); ++p)
    if (i[p]) out[to.position(from.var_of(p), from.shift_of(p))] = i[p];
  return out;
}

inline std::string index_str(const MultiIndex& i) {
  std::string out = "(";
  for (std::size_t p = 0; p < i.size(); ++p) {
    if (p) out += ",";
    out += std::to_string(i[p]);
  }
  return out + ")";
}

}  // namespace vdf
