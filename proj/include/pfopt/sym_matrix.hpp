#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "pfopt/error.hpp"

namespace pfopt {

/// Dense symmetric matrix. Writes go through set(), which mirrors, so the
/// stored array is symmetric by construction.
template <class T>
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t order) : order_(order), data_(order * order, T(0)) {}

  std::size_t order() const noexcept { return order_; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * order_ + j]; }

  void set(std::size_t i, std::size_t j, const T& v) {
    data_[i * order_ + j] = v;
    data_[j * order_ + i] = v;
  }

  /// Leading principal block of the given order.
  SymMatrix leading(std::size_t order) const {
    if (order > order_) throw IndexOutOfRange("leading block larger than matrix");
    SymMatrix out(order);
    for (std::size_t i = 0; i < order; ++i) {
      for (std::size_t j = i; j < order; ++j) out.set(i, j, (*this)(i, j));
    }
    return out;
  }

  template <class U, class Convert>
  SymMatrix<U> map(Convert convert) const {
    SymMatrix<U> out(order_);
    for (std::size_t i = 0; i < order_; ++i) {
      for (std::size_t j = i; j < order_; ++j) out.set(i, j, convert((*this)(i, j)));
    }
    return out;
  }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t order_ = 0;
  std::vector<T> data_;
};

/// One row per line, comma separated.
template <class T>
void write_csv(std::ostream& os, const SymMatrix<T>& m) {
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << '\n';
  }
}

}  // namespace pfopt
