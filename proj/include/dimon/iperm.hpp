#ifndef DIMON_IPERM_HPP_
#define DIMON_IPERM_HPP_

// Partial injective transformations of the chain 1 < 2 < ... < n.
//
// Maps act on the right and compose left-to-right: compose(f, g) sends p to
// (p f) g.  Points are 1-based.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace dimon {

  using Point = std::uint32_t;

  class PartialPerm {
   public:
    static constexpr Point undefined = 0;

    PartialPerm() = default;

    // The empty map of the given degree.
    explicit PartialPerm(std::size_t degree);

    // images[p - 1] is the image of p, or `undefined`.  Validates range and
    // injectivity.
    PartialPerm(std::size_t degree, std::vector<Point> images);

    static PartialPerm from_pairs(std::size_t                        degree,
                                  std::span<std::pair<Point, Point> const> pairs);
    static PartialPerm identity(std::size_t degree);

    [[nodiscard]] std::size_t degree() const noexcept {
      return _images.size();
    }

    [[nodiscard]] Point operator[](Point p) const noexcept {
      return _images[p - 1];
    }

    [[nodiscard]] bool is_defined_at(Point p) const noexcept {
      return p >= 1 && p <= degree() && _images[p - 1] != undefined;
    }

    [[nodiscard]] std::size_t rank() const noexcept;
    [[nodiscard]] bool        is_total() const noexcept {
      return rank() == degree();
    }

    [[nodiscard]] std::vector<Point>                   domain() const;
    [[nodiscard]] std::vector<Point>                   image() const;
    [[nodiscard]] std::vector<std::pair<Point, Point>> pairs() const;

    [[nodiscard]] std::vector<Point> const& images() const noexcept {
      return _images;
    }

    friend bool operator==(PartialPerm const&, PartialPerm const&) = default;
    friend auto operator<=>(PartialPerm const&, PartialPerm const&) = default;

   private:
    std::vector<Point> _images;
  };

  struct SequenceKind {
    bool cyclic      = false;
    bool anti_cyclic = false;

    friend bool operator==(SequenceKind const&, SequenceKind const&) = default;
  };

  [[nodiscard]] PartialPerm compose(PartialPerm const& f, PartialPerm const& g);
  [[nodiscard]] PartialPerm inverse(PartialPerm const& f);
  [[nodiscard]] PartialPerm partial_identity(std::size_t              n,
                                             std::span<Point const> points);
  [[nodiscard]] PartialPerm restrict(PartialPerm const&     f,
                                     std::span<Point const> points);
  // f agrees with the total map p on dom(f).  Throws if p is not total.
  [[nodiscard]] bool is_restriction_of(PartialPerm const& f, PartialPerm const& p);

  // Product of a sequence, left to right; identity of `degree` when empty.
  [[nodiscard]] PartialPerm product(std::size_t                   degree,
                                    std::span<PartialPerm const> factors);
  [[nodiscard]] PartialPerm power(PartialPerm const& f, std::size_t k);

  inline PartialPerm operator*(PartialPerm const& f, PartialPerm const& g) {
    return compose(f, g);
  }

  [[nodiscard]] SequenceKind classify_image_sequence(PartialPerm const& f);

  [[nodiscard]] bool is_order_preserving(PartialPerm const& f);
  [[nodiscard]] bool is_order_reversing(PartialPerm const& f);
  [[nodiscard]] bool is_monotone(PartialPerm const& f);
  [[nodiscard]] bool is_orientation_preserving(PartialPerm const& f);
  [[nodiscard]] bool is_orientation_reversing(PartialPerm const& f);
  [[nodiscard]] bool is_oriented(PartialPerm const& f);

  enum class GeneratorKind { g, h, e, x, y, x_i, y_i };

  // The named generators of the dihedral inverse monoid families:
  //   g    = (1 2 ... n), the n-cycle p -> p + 1 mod n
  //   h    = the reflection p -> n - p + 1                       (n >= 2)
  //   e_i  = identity on {1..n} minus {i}                        (1 <= i <= n)
  //   x    = p -> p + 1 on {1..n-1}, y = x^-1
  //   x_i  = {1 -> 1, 1+i -> n-i+1}, y_i = x_i^-1   (1 <= i <= (n-1)/2)
  [[nodiscard]] PartialPerm named_generator(GeneratorKind kind,
                                            std::size_t   n,
                                            std::size_t   index = 0);

  // Shorthands over named_generator.
  [[nodiscard]] PartialPerm gen_g(std::size_t n);
  [[nodiscard]] PartialPerm gen_h(std::size_t n);
  [[nodiscard]] PartialPerm gen_e(std::size_t n, std::size_t i);
  [[nodiscard]] PartialPerm gen_x(std::size_t n);
  [[nodiscard]] PartialPerm gen_y(std::size_t n);
  [[nodiscard]] PartialPerm gen_xi(std::size_t n, std::size_t i);
  [[nodiscard]] PartialPerm gen_yi(std::size_t n, std::size_t i);

  // floor((n - 1) / 2): the number of x_i (and of y_i).
  [[nodiscard]] constexpr std::size_t half_floor(std::size_t n) noexcept {
    return n == 0 ? 0 : (n - 1) / 2;
  }

  // {"n": 4, "map": [[1, 1], [2, 4]]}
  [[nodiscard]] nlohmann::ordered_json to_json(PartialPerm const& f);
  [[nodiscard]] PartialPerm            partial_perm_from_json(nlohmann::ordered_json const& j);

  // Two-row notation, e.g. "[1 2|1 4]"; "[|]" for the empty map.
  [[nodiscard]] std::string to_string(PartialPerm const& f);

}  // namespace dimon

template <>
struct std::hash<dimon::PartialPerm> {
  std::size_t operator()(dimon::PartialPerm const& f) const noexcept {
    std::size_t seed = f.degree();
    for (auto v : f.images()) {
      seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
  }
};

#endif  // DIMON_IPERM_HPP_
