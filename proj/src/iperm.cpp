#include "dimon/iperm.hpp"

#include <algorithm>
#include <sstream>

#include "dimon/error.hpp"

namespace dimon {

  PartialPerm::PartialPerm(std::size_t degree) : _images(degree, undefined) {}

  PartialPerm::PartialPerm(std::size_t degree, std::vector<Point> images)
      : _images(std::move(images)) {
    if (_images.size() != degree) {
      throw Error("PartialPerm: expected " + std::to_string(degree)
                  + " images, found " + std::to_string(_images.size()));
    }
    std::vector<bool> seen(degree + 1, false);
    for (auto v : _images) {
      if (v == undefined) {
        continue;
      }
      if (v > degree) {
        throw Error("PartialPerm: image " + std::to_string(v)
                    + " out of range 1.." + std::to_string(degree));
      }
      if (seen[v]) {
        throw Error("PartialPerm: image " + std::to_string(v)
                    + " repeated, map is not injective");
      }
      seen[v] = true;
    }
  }

  PartialPerm PartialPerm::from_pairs(
      std::size_t                              degree,
      std::span<std::pair<Point, Point> const> pairs) {
    std::vector<Point> images(degree, undefined);
    for (auto [p, q] : pairs) {
      if (p < 1 || p > degree) {
        throw Error("PartialPerm: point " + std::to_string(p)
                    + " out of range 1.." + std::to_string(degree));
      }
      if (q < 1) {
        throw Error("PartialPerm: image 0 is not a point");
      }
      if (images[p - 1] != undefined) {
        throw Error("PartialPerm: point " + std::to_string(p)
                    + " listed twice");
      }
      images[p - 1] = q;
    }
    return PartialPerm(degree, std::move(images));
  }

  PartialPerm PartialPerm::identity(std::size_t degree) {
    std::vector<Point> images(degree);
    for (std::size_t p = 0; p < degree; ++p) {
      images[p] = static_cast<Point>(p + 1);
    }
    return PartialPerm(degree, std::move(images));
  }

  std::size_t PartialPerm::rank() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(_images.begin(), _images.end(), [](Point v) {
          return v != undefined;
        }));
  }

  std::vector<Point> PartialPerm::domain() const {
    std::vector<Point> result;
    for (std::size_t p = 0; p < _images.size(); ++p) {
      if (_images[p] != undefined) {
        result.push_back(static_cast<Point>(p + 1));
      }
    }
    return result;
  }

  std::vector<Point> PartialPerm::image() const {
    std::vector<Point> result;
    for (auto v : _images) {
      if (v != undefined) {
        result.push_back(v);
      }
    }
    std::sort(result.begin(), result.end());
    return result;
  }

  std::vector<std::pair<Point, Point>> PartialPerm::pairs() const {
    std::vector<std::pair<Point, Point>> result;
    for (std::size_t p = 0; p < _images.size(); ++p) {
      if (_images[p] != undefined) {
        result.emplace_back(static_cast<Point>(p + 1), _images[p]);
      }
    }
    return result;
  }

  PartialPerm compose(PartialPerm const& f, PartialPerm const& g) {
    if (f.degree() != g.degree()) {
      throw Error("compose: degree mismatch (" + std::to_string(f.degree())
                  + " vs " + std::to_string(g.degree()) + ")");
    }
    std::vector<Point> images(f.degree(), PartialPerm::undefined);
    for (std::size_t p = 0; p < f.degree(); ++p) {
      Point q = f.images()[p];
      if (q != PartialPerm::undefined) {
        images[p] = g[q];
      }
    }
    return PartialPerm(f.degree(), std::move(images));
  }

  PartialPerm inverse(PartialPerm const& f) {
    std::vector<Point> images(f.degree(), PartialPerm::undefined);
    for (std::size_t p = 0; p < f.degree(); ++p) {
      Point q = f.images()[p];
      if (q != PartialPerm::undefined) {
        images[q - 1] = static_cast<Point>(p + 1);
      }
    }
    return PartialPerm(f.degree(), std::move(images));
  }

  PartialPerm partial_identity(std::size_t n, std::span<Point const> points) {
    std::vector<Point> images(n, PartialPerm::undefined);
    for (auto p : points) {
      if (p < 1 || p > n) {
        throw Error("partial_identity: point " + std::to_string(p)
                    + " out of range 1.." + std::to_string(n));
      }
      images[p - 1] = p;
    }
    return PartialPerm(n, std::move(images));
  }

  PartialPerm restrict(PartialPerm const& f, std::span<Point const> points) {
    std::vector<Point> images(f.degree(), PartialPerm::undefined);
    for (auto p : points) {
      if (p < 1 || p > f.degree()) {
        throw Error("restrict: point " + std::to_string(p)
                    + " out of range 1.." + std::to_string(f.degree()));
      }
      images[p - 1] = f[p];
    }
    return PartialPerm(f.degree(), std::move(images));
  }

  bool is_restriction_of(PartialPerm const& f, PartialPerm const& p) {
    if (f.degree() != p.degree()) {
      throw Error("is_restriction_of: degree mismatch");
    }
    if (!p.is_total()) {
      throw Error("is_restriction_of: second argument must be a total map");
    }
    for (std::size_t i = 0; i < f.degree(); ++i) {
      auto v = f.images()[i];
      if (v != PartialPerm::undefined && v != p.images()[i]) {
        return false;
      }
    }
    return true;
  }

  PartialPerm product(std::size_t degree, std::span<PartialPerm const> factors) {
    PartialPerm result = PartialPerm::identity(degree);
    for (auto const& f : factors) {
      result = compose(result, f);
    }
    return result;
  }

  PartialPerm power(PartialPerm const& f, std::size_t k) {
    PartialPerm result = PartialPerm::identity(f.degree());
    for (std::size_t i = 0; i < k; ++i) {
      result = compose(result, f);
    }
    return result;
  }

  SequenceKind classify_image_sequence(PartialPerm const& f) {
    std::vector<Point> seq;
    for (auto v : f.images()) {
      if (v != PartialPerm::undefined) {
        seq.push_back(v);
      }
    }
    std::size_t descents = 0;
    std::size_t ascents  = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      Point a = seq[i];
      Point b = seq[(i + 1) % seq.size()];
      descents += a > b;
      ascents += a < b;
    }
    return {descents <= 1, ascents <= 1};
  }

  bool is_order_preserving(PartialPerm const& f) {
    Point last = 0;
    for (auto v : f.images()) {
      if (v == PartialPerm::undefined) {
        continue;
      }
      if (v < last) {
        return false;
      }
      last = v;
    }
    return true;
  }

  bool is_order_reversing(PartialPerm const& f) {
    Point last = static_cast<Point>(f.degree() + 1);
    for (auto v : f.images()) {
      if (v == PartialPerm::undefined) {
        continue;
      }
      if (v > last) {
        return false;
      }
      last = v;
    }
    return true;
  }

  bool is_monotone(PartialPerm const& f) {
    return is_order_preserving(f) || is_order_reversing(f);
  }

  bool is_orientation_preserving(PartialPerm const& f) {
    return classify_image_sequence(f).cyclic;
  }

  bool is_orientation_reversing(PartialPerm const& f) {
    return classify_image_sequence(f).anti_cyclic;
  }

  bool is_oriented(PartialPerm const& f) {
    auto kind = classify_image_sequence(f);
    return kind.cyclic || kind.anti_cyclic;
  }

  PartialPerm named_generator(GeneratorKind kind, std::size_t n, std::size_t i) {
    if (n < 1) {
      throw Error("named_generator: degree must be at least 1");
    }
    std::vector<Point> images(n, PartialPerm::undefined);
    auto const         N = static_cast<Point>(n);
    switch (kind) {
      case GeneratorKind::g:
        for (Point p = 1; p <= N; ++p) {
          images[p - 1] = p % N + 1;
        }
        break;
      case GeneratorKind::h:
        if (n < 2) {
          throw Error("named_generator: h requires n >= 2");
        }
        for (Point p = 1; p <= N; ++p) {
          images[p - 1] = N - p + 1;
        }
        break;
      case GeneratorKind::e:
        if (i < 1 || i > n) {
          throw Error("named_generator: e_i requires 1 <= i <= n, got i = "
                      + std::to_string(i));
        }
        for (Point p = 1; p <= N; ++p) {
          images[p - 1] = (p == i) ? PartialPerm::undefined : p;
        }
        break;
      case GeneratorKind::x:
        for (Point p = 1; p < N; ++p) {
          images[p - 1] = p + 1;
        }
        break;
      case GeneratorKind::y:
        for (Point p = 2; p <= N; ++p) {
          images[p - 1] = p - 1;
        }
        break;
      case GeneratorKind::x_i:
      case GeneratorKind::y_i: {
        if (i < 1 || i > half_floor(n)) {
          throw Error("named_generator: x_i/y_i requires 1 <= i <= "
                      + std::to_string(half_floor(n))
                      + ", got i = " + std::to_string(i));
        }
        auto const I = static_cast<Point>(i);
        images[0]    = 1;
        if (kind == GeneratorKind::x_i) {
          images[I] = N - I + 1;
        } else {
          images[N - I] = 1 + I;
        }
        break;
      }
    }
    return PartialPerm(n, std::move(images));
  }

  PartialPerm gen_g(std::size_t n) {
    return named_generator(GeneratorKind::g, n);
  }
  PartialPerm gen_h(std::size_t n) {
    return named_generator(GeneratorKind::h, n);
  }
  PartialPerm gen_e(std::size_t n, std::size_t i) {
    return named_generator(GeneratorKind::e, n, i);
  }
  PartialPerm gen_x(std::size_t n) {
    return named_generator(GeneratorKind::x, n);
  }
  PartialPerm gen_y(std::size_t n) {
    return named_generator(GeneratorKind::y, n);
  }
  PartialPerm gen_xi(std::size_t n, std::size_t i) {
    return named_generator(GeneratorKind::x_i, n, i);
  }
  PartialPerm gen_yi(std::size_t n, std::size_t i) {
    return named_generator(GeneratorKind::y_i, n, i);
  }

  nlohmann::ordered_json to_json(PartialPerm const& f) {
    nlohmann::ordered_json j;
    j["n"]   = f.degree();
    j["map"] = nlohmann::ordered_json::array();
    for (auto [p, q] : f.pairs()) {
      j["map"].push_back({p, q});
    }
    return j;
  }

  PartialPerm partial_perm_from_json(nlohmann::ordered_json const& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("map")) {
      throw Error("partial_perm_from_json: expected {\"n\": ..., \"map\": [...]}");
    }
    auto                                 n = j.at("n").get<std::size_t>();
    std::vector<std::pair<Point, Point>> pairs;
    Point                                last = 0;
    for (auto const& pq : j.at("map")) {
      if (!pq.is_array() || pq.size() != 2) {
        throw Error("partial_perm_from_json: map entries must be [point, image]");
      }
      auto p = pq[0].get<Point>();
      if (p <= last) {
        throw Error("partial_perm_from_json: points must be strictly increasing");
      }
      last = p;
      pairs.emplace_back(p, pq[1].get<Point>());
    }
    return PartialPerm::from_pairs(n, pairs);
  }

  std::string to_string(PartialPerm const& f) {
    std::ostringstream top, bottom;
    bool               first = true;
    for (auto [p, q] : f.pairs()) {
      if (!first) {
        top << ' ';
        bottom << ' ';
      }
      first = false;
      top << p;
      bottom << q;
    }
    return "[" + top.str() + "|" + bottom.str() + "]";
  }

}  // namespace dimon
