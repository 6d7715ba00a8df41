#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "sdn/error.hpp"
#include "sdn/extended.hpp"

namespace sdn {

/// Order preserving map [0, inf] -> [0, inf], piecewise linear with
/// possible jumps at breakpoints.
///
/// Piece i starts at `start`, takes the value `at` there and equals
/// `right + slope * (t - start)` on the open interval up to the next start
/// (the last piece extends to infinity). Arithmetic only uses + - * / of
/// the scalar type, so rational scalars give exact results.
template <typename Scalar>
class TranslationMap {
 public:
  struct Piece {
    Scalar start;
    Scalar at;
    Scalar right;
    Scalar slope;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  using Value = Extended<Scalar>;

  /// Validates monotonicity. The value at infinity defaults to inf for
  /// unbounded maps and to the final constant otherwise.
  explicit TranslationMap(std::vector<Piece> pieces, std::optional<Value> at_infinity = std::nullopt)
      : pieces_(std::move(pieces)) {
    if (pieces_.empty() || pieces_.front().start != Scalar(0))
      throw InvalidArgument("translation map must start at 0");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      if (p.at < Scalar(0) || p.right < p.at || p.slope < Scalar(0))
        throw InvalidArgument("translation map is not order preserving");
      if (i + 1 < pieces_.size()) {
        const Piece& q = pieces_[i + 1];
        if (!(p.start < q.start)) throw InvalidArgument("translation map breakpoints not ascending");
        if (q.at < left_limit(i + 1)) throw InvalidArgument("translation map is not order preserving");
      }
    }
    const Piece& last = pieces_.back();
    if (last.slope > Scalar(0)) {
      at_infinity_ = Value::infinity();
    } else {
      at_infinity_ = at_infinity.value_or(Value(last.right));
      if (at_infinity_ < Value(last.right)) throw InvalidArgument("translation map is not order preserving");
    }
    normalize();
  }

  static TranslationMap identity() { return affine(Scalar(1), Scalar(0)); }

  /// t -> slope * t + offset.
  static TranslationMap affine(Scalar slope, Scalar offset) {
    return TranslationMap({Piece{Scalar(0), offset, offset, slope}});
  }

  static TranslationMap shift(Scalar offset) { return affine(Scalar(1), offset); }

  /// t -> max(slope * t, floor), slope > 0.
  static TranslationMap linear_with_floor(Scalar slope, Scalar floor) {
    if (!(slope > Scalar(0))) throw InvalidArgument("slope must be positive");
    if (floor == Scalar(0)) return affine(slope, Scalar(0));
    return TranslationMap({Piece{Scalar(0), floor, floor, Scalar(0)},
                           Piece{floor / slope, floor, floor, slope}});
  }

  const std::vector<Piece>& pieces() const { return pieces_; }
  const Value& at_infinity() const { return at_infinity_; }

  Scalar operator()(const Scalar& t) const {
    const Piece& p = pieces_[piece_index(t)];
    if (t == p.start) return p.at;
    return p.right + p.slope * (t - p.start);
  }

  Value operator()(const Value& t) const {
    if (t.is_infinite()) return at_infinity_;
    return Value((*this)(t.value()));
  }

  /// lim f(s) as s decreases to t.
  Scalar right_limit(const Scalar& t) const {
    const Piece& p = pieces_[piece_index(t)];
    return p.right + p.slope * (t - p.start);
  }

  /// Slope on a right neighbourhood of t.
  Scalar right_slope(const Scalar& t) const { return pieces_[piece_index(t)].slope; }

  bool bounded() const { return !(pieces_.back().slope > Scalar(0)); }

  /// t <= f(t) for every t in [0, inf].
  bool dominates_identity() const {
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      if (p.at < p.start || p.right < p.start) return false;
      if (i + 1 < pieces_.size() && left_limit(i + 1) < pieces_[i + 1].start) return false;
    }
    return pieces_.back().slope >= Scalar(1) && at_infinity_.is_infinite();
  }

  friend bool operator==(const TranslationMap& a, const TranslationMap& b) {
    return a.pieces_ == b.pieces_ && a.at_infinity_ == b.at_infinity_;
  }

 private:
  std::size_t piece_index(const Scalar& t) const {
    if (t < Scalar(0)) throw InvalidArgument("translation map evaluated at negative t");
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](const Scalar& x, const Piece& p) { return x < p.start; });
    return static_cast<std::size_t>(it - pieces_.begin()) - 1;
  }

  // Limit from the left at the start of piece i > 0.
  Scalar left_limit(std::size_t i) const {
    const Piece& p = pieces_[i - 1];
    return p.right + p.slope * (pieces_[i].start - p.start);
  }

  void normalize() {
    std::vector<Piece> out;
    out.push_back(pieces_.front());
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
      const Piece& prev = out.back();
      const Piece& p = pieces_[i];
      const Scalar left = prev.right + prev.slope * (p.start - prev.start);
      if (p.at == left && p.right == left && p.slope == prev.slope) continue;
      out.push_back(p);
    }
    pieces_ = std::move(out);
  }

  std::vector<Piece> pieces_;
  Value at_infinity_;
};

/// Pointwise sum.
namespace detail {

// Pieces assembled by arithmetic can dip an ulp below the previous piece's
// left limit. Lift them back so the result stays monotone.
template <typename Piece>
void lift_rounding(std::vector<Piece>& pieces) {
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    const Piece& p = pieces[i - 1];
    const auto left = p.right + p.slope * (pieces[i].start - p.start);
    if (pieces[i].at < left) pieces[i].at = left;
    if (pieces[i].right < pieces[i].at) pieces[i].right = pieces[i].at;
  }
}

}  // namespace detail

template <typename Scalar>
TranslationMap<Scalar> operator+(const TranslationMap<Scalar>& f, const TranslationMap<Scalar>& g) {
  using Piece = typename TranslationMap<Scalar>::Piece;
  std::vector<Scalar> starts;
  for (const auto& p : f.pieces()) starts.push_back(p.start);
  for (const auto& p : g.pieces()) starts.push_back(p.start);
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  std::vector<Piece> pieces;
  for (const Scalar& s : starts)
    pieces.push_back(Piece{s, f(s) + g(s), f.right_limit(s) + g.right_limit(s),
                           f.right_slope(s) + g.right_slope(s)});
  detail::lift_rounding(pieces);
  return TranslationMap<Scalar>(std::move(pieces), f.at_infinity() + g.at_infinity());
}

/// f + c for a constant c >= 0.
template <typename Scalar>
TranslationMap<Scalar> operator+(const TranslationMap<Scalar>& f, const Scalar& c) {
  return f + TranslationMap<Scalar>::affine(Scalar(0), c);
}

/// Pointwise composite f o g.
template <typename Scalar>
TranslationMap<Scalar> compose(const TranslationMap<Scalar>& f, const TranslationMap<Scalar>& g) {
  using Piece = typename TranslationMap<Scalar>::Piece;
  const auto& gp = g.pieces();
  std::vector<Scalar> starts;
  for (std::size_t i = 0; i < gp.size(); ++i) {
    starts.push_back(gp[i].start);
    if (!(gp[i].slope > Scalar(0))) continue;
    // Preimages under this linear piece of f's breakpoints.
    for (const auto& fp : f.pieces()) {
      if (fp.start <= gp[i].right) continue;
      const Scalar t = gp[i].start + (fp.start - gp[i].right) / gp[i].slope;
      if (i + 1 == gp.size() || t < gp[i + 1].start) starts.push_back(t);
    }
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

  std::vector<Piece> pieces;
  for (const Scalar& s : starts) {
    const Scalar gr = g.right_limit(s);
    const Scalar gslope = g.right_slope(s);
    if (gslope > Scalar(0)) {
      pieces.push_back(Piece{s, f(g(s)), f.right_limit(gr), f.right_slope(gr) * gslope});
    } else {
      const Scalar v = f(gr);
      pieces.push_back(Piece{s, f(g(s)), v, Scalar(0)});
    }
  }
  detail::lift_rounding(pieces);
  return TranslationMap<Scalar>(std::move(pieces), f(g.at_infinity()));
}

namespace detail {

// Where inf{t | f(t) >= s} is attained: either at a piece start (slope 0
// in s) or inside the linear part of a piece.
template <typename Scalar>
struct InverseBranch {
  std::size_t piece;
  bool at_start;
};

template <typename Scalar>
InverseBranch<Scalar> inverse_branch(const TranslationMap<Scalar>& f, const Scalar& s) {
  const auto& ps = f.pieces();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].at >= s || ps[i].right >= s) return {i, true};
    if (ps[i].slope > Scalar(0)) {
      const Scalar t = ps[i].start + (s - ps[i].right) / ps[i].slope;
      if (i + 1 == ps.size() || t < ps[i + 1].start) return {i, false};
    }
  }
  throw InvalidArgument("not inverse-eligible");
}

}  // namespace detail

/// s -> inf{t in [0, inf] | f(t) >= s}. Requires f to be unbounded.
template <typename Scalar>
TranslationMap<Scalar> generalized_inverse(const TranslationMap<Scalar>& f) {
  using Piece = typename TranslationMap<Scalar>::Piece;
  if (f.bounded()) throw InvalidArgument("not inverse-eligible");
  const auto& ps = f.pieces();

  std::vector<Scalar> breaks{Scalar(0)};
  for (std::size_t i = 0; i < ps.size(); ++i) {
    breaks.push_back(ps[i].at);
    breaks.push_back(ps[i].right);
    if (i + 1 < ps.size()) breaks.push_back(ps[i].right + ps[i].slope * (ps[i + 1].start - ps[i].start));
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto value_at = [&](const Scalar& s) {
    const auto b = detail::inverse_branch(f, s);
    const Piece& p = ps[b.piece];
    return b.at_start ? p.start : p.start + (s - p.right) / p.slope;
  };

  std::vector<Piece> out;
  for (std::size_t j = 0; j < breaks.size(); ++j) {
    const Scalar& s = breaks[j];
    const Scalar probe = j + 1 < breaks.size() ? (s + breaks[j + 1]) / Scalar(2) : s + Scalar(1);
    const auto b = detail::inverse_branch(f, probe);
    const Piece& p = ps[b.piece];
    if (b.at_start)
      out.push_back(Piece{s, value_at(s), p.start, Scalar(0)});
    else
      out.push_back(Piece{s, value_at(s), p.start + (s - p.right) / p.slope, Scalar(1) / p.slope});
  }
  return TranslationMap<Scalar>(std::move(out));
}

enum class PresetMode { additive_cover, multiplicative };

template <typename Scalar>
struct AlphaBeta {
  TranslationMap<Scalar> alpha;
  TranslationMap<Scalar> beta;
};

/// beta(t) = max((c-1)t, rho), alpha(t) = t + beta(t) + sup.
template <typename Scalar>
AlphaBeta<Scalar> additive_cover_preset(const Scalar& c, const Extended<Scalar>& cover_radius,
                                        const Extended<Scalar>& sup_t) {
  if (!(c > Scalar(1))) throw InvalidArgument("parameter c must be > 1");
  if (cover_radius.is_infinite() || sup_t.is_infinite())
    throw InvalidArgument("cover radius and sup over T must be finite");
  auto beta = TranslationMap<Scalar>::linear_with_floor(c - Scalar(1), cover_radius.value());
  auto alpha = TranslationMap<Scalar>::identity() + beta + sup_t.value();
  return {std::move(alpha), std::move(beta)};
}

/// beta(t) = eps t, alpha(t) = (1 + eps) t.
template <typename Scalar>
AlphaBeta<Scalar> multiplicative_preset(const Scalar& eps) {
  if (!(eps > Scalar(0))) throw InvalidArgument("parameter epsilon must be > 0");
  return {TranslationMap<Scalar>::affine(Scalar(1) + eps, Scalar(0)),
          TranslationMap<Scalar>::affine(eps, Scalar(0))};
}

}  // namespace sdn
