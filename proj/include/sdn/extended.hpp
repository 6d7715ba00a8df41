#pragma once

#include <Eigen/Core>

#include <compare>
#include <limits>
#include <ostream>
#include <type_traits>

#include "sdn/error.hpp"

namespace sdn {

/// A value of the extended half line [0, inf].
///
/// Infinity is an explicit tag rather than a floating point sentinel, so the
/// same semantics hold for exact scalar types. Every finite value compares
/// below infinity and inf + x = inf.
template <typename Scalar>
class Extended {
 public:
  constexpr Extended() : value_(0), infinite_(false) {}

  // Implicit on purpose: finite scalars read naturally as extended values.
  Extended(Scalar v) : value_(v), infinite_(false) {  // NOLINT
    if constexpr (std::numeric_limits<Scalar>::has_infinity) {
      if (v == std::numeric_limits<Scalar>::infinity()) {
        value_ = Scalar(0);
        infinite_ = true;
        return;
      }
    }
    if (!(v >= Scalar(0))) throw InvalidArgument("extended value must be >= 0");
  }

  static Extended infinity() {
    Extended e;
    e.infinite_ = true;
    return e;
  }

  bool is_finite() const { return !infinite_; }
  bool is_infinite() const { return infinite_; }

  /// The finite value. Precondition: is_finite().
  const Scalar& value() const {
    if (infinite_) throw InvalidArgument("value() of infinite extended value");
    return value_;
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator!=(const Extended& a, const Extended& b) { return !(a == b); }
  friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
  friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }
  friend bool operator>=(const Extended& a, const Extended& b) { return !(a < b); }

  friend Extended operator+(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Extended(a.value_ + b.value_);
  }
  Extended& operator+=(const Extended& o) { return *this = *this + o; }

  /// Scaling by a non-negative finite factor; 0 * inf is taken to be inf.
  friend Extended operator*(const Scalar& k, const Extended& a) {
    if (a.infinite_) return infinity();
    return Extended(k * a.value_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Extended& e) {
    if (e.infinite_) return os << "inf";
    return os << e.value_;
  }

 private:
  Scalar value_;
  bool infinite_;
};

template <typename Scalar>
Extended<Scalar> min(const Extended<Scalar>& a, const Extended<Scalar>& b) {
  return b < a ? b : a;
}

template <typename Scalar>
Extended<Scalar> max(const Extended<Scalar>& a, const Extended<Scalar>& b) {
  return a < b ? b : a;
}

/// |a - b| with |inf - inf| = 0 and |x - inf| = inf.
template <typename Scalar>
Extended<Scalar> abs_difference(const Extended<Scalar>& a, const Extended<Scalar>& b) {
  if (a.is_infinite() && b.is_infinite()) return Extended<Scalar>(Scalar(0));
  if (a.is_infinite() || b.is_infinite()) return Extended<Scalar>::infinity();
  return a.value() < b.value() ? Extended<Scalar>(b.value() - a.value())
                               : Extended<Scalar>(a.value() - b.value());
}

using ExtendedValue = Extended<double>;

}  // namespace sdn

namespace Eigen {

// Storage-only numeric traits: dense grids of extended values, no linear
// algebra on them.
template <typename Scalar>
struct NumTraits<sdn::Extended<Scalar>> : GenericNumTraits<sdn::Extended<Scalar>> {
  using Real = sdn::Extended<Scalar>;
  using NonInteger = sdn::Extended<Scalar>;
  using Literal = sdn::Extended<Scalar>;
  using Nested = sdn::Extended<Scalar>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 1,
    MulCost = 1
  };
  static constexpr int digits10() { return NumTraits<Scalar>::digits10(); }
};

}  // namespace Eigen
