#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <utility>
#include <vector>

#include "sdn/error.hpp"

namespace sdn {

/// A relation R between index sets {0..rows-1} and {0..cols-1}, stored as a
/// dense membership mask.
class Relation {
 public:
  using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;
  using Pair = std::pair<Eigen::Index, Eigen::Index>;

  Relation() = default;
  Relation(Eigen::Index rows, Eigen::Index cols) : mask_(Mask::Constant(rows, cols, false)) {}
  explicit Relation(Mask mask) : mask_(std::move(mask)) {}

  static Relation from_pairs(Eigen::Index rows, Eigen::Index cols, const std::vector<Pair>& pairs) {
    Relation r(rows, cols);
    for (auto [a, b] : pairs) r.insert(a, b);
    return r;
  }

  static Relation diagonal(Eigen::Index n) {
    Relation r(n, n);
    for (Eigen::Index i = 0; i < n; ++i) r.mask_(i, i) = true;
    return r;
  }

  static Relation full(Eigen::Index rows, Eigen::Index cols) {
    return Relation(Mask::Constant(rows, cols, true));
  }

  Eigen::Index rows() const { return mask_.rows(); }
  Eigen::Index cols() const { return mask_.cols(); }

  bool contains(Eigen::Index a, Eigen::Index b) const {
    check(a, b);
    return mask_(a, b);
  }
  void insert(Eigen::Index a, Eigen::Index b) {
    check(a, b);
    mask_(a, b) = true;
  }

  std::size_t size() const { return static_cast<std::size_t>(mask_.count()); }
  bool empty() const { return size() == 0; }

  /// Pairs in row-major lexicographic order.
  std::vector<Pair> pairs() const {
    std::vector<Pair> out;
    for (Eigen::Index a = 0; a < rows(); ++a)
      for (Eigen::Index b = 0; b < cols(); ++b)
        if (mask_(a, b)) out.emplace_back(a, b);
    return out;
  }

  const Mask& mask() const { return mask_; }

  Relation transposed() const { return Relation(Mask(mask_.transpose())); }

  /// Set inclusion.
  bool subset_of(const Relation& other) const {
    if (rows() != other.rows() || cols() != other.cols()) return false;
    return (mask_ && !other.mask_).count() == 0;
  }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.mask_ == b.mask_).all();
  }

 private:
  void check(Eigen::Index a, Eigen::Index b) const {
    if (a < 0 || b < 0 || a >= rows() || b >= cols())
      throw InvalidArgument("relation index out of range");
  }

  Mask mask_;
};

/// Composition S o R = {(x,z) | exists y: (x,y) in R and (y,z) in S}.
inline Relation compose(const Relation& s, const Relation& r) {
  if (r.cols() != s.rows()) throw InvalidArgument("relation composition: inner sets differ");
  Eigen::MatrixXi prod = r.mask().cast<int>().matrix() * s.mask().cast<int>().matrix();
  return Relation(Relation::Mask(prod.array() > 0));
}

/// Both projections surjective.
inline bool is_correspondence(const Relation& c) {
  return c.mask().rowwise().any().all() && c.mask().colwise().any().all();
}

}  // namespace sdn
