#ifndef DIMON_MONOID_HPP_
#define DIMON_MONOID_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dimon/iperm.hpp"
#include "json.hpp"

namespace dimon {

  // A finite monoid of partial permutations together with its right and left
  // Cayley graphs with respect to a generator list.  Element 0 is the
  // identity; elements are numbered in breadth-first discovery order.
  class FiniteMonoid {
   public:
    using index_type = std::uint32_t;

    FiniteMonoid() = default;

    [[nodiscard]] std::size_t degree() const noexcept {
      return _degree;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _elements.size();
    }
    [[nodiscard]] std::size_t number_of_generators() const noexcept {
      return _generators.size();
    }

    [[nodiscard]] std::vector<PartialPerm> const& elements() const noexcept {
      return _elements;
    }
    [[nodiscard]] PartialPerm const& at(index_type i) const {
      return _elements.at(i);
    }
    [[nodiscard]] std::vector<index_type> const& generators() const noexcept {
      return _generators;
    }

    // element i times generator j / generator j times element i
    [[nodiscard]] index_type right(index_type i, std::size_t j) const noexcept {
      return _right[i * _generators.size() + j];
    }
    [[nodiscard]] index_type left(index_type i, std::size_t j) const noexcept {
      return _left[i * _generators.size() + j];
    }

    [[nodiscard]] std::optional<index_type> index_of(PartialPerm const& f) const;
    [[nodiscard]] bool contains(PartialPerm const& f) const {
      return index_of(f).has_value();
    }

    friend FiniteMonoid closure(std::size_t                  degree,
                                std::span<PartialPerm const> gens,
                                std::size_t                  cap);

   private:
    std::size_t                                         _degree = 0;
    std::vector<PartialPerm>                            _elements;
    std::unordered_map<PartialPerm, index_type>         _lookup;
    std::vector<index_type>                             _generators;
    std::vector<index_type>                             _right;
    std::vector<index_type>                             _left;
  };

  inline constexpr std::size_t default_closure_cap = 10'000'000;

  // Smallest monoid containing `gens` and the identity.  Throws CappedError if
  // more than `cap` elements are produced.
  [[nodiscard]] FiniteMonoid closure(std::size_t                  degree,
                                     std::span<PartialPerm const> gens,
                                     std::size_t cap = default_closure_cap);

  enum class MonoidFamily {
    DI,
    ODI,
    MDI,
    OPDI,
    CI,
    OCI,
    DihedralGroup,
    CyclicGroup
  };

  [[nodiscard]] std::string_view          name(MonoidFamily family) noexcept;
  [[nodiscard]] std::optional<MonoidFamily> parse_monoid_family(std::string_view s);

  // The generating sets used for each family:
  //   ODI  {x, y, e_2..e_{n-1}, x_1.., y_1..}      MDI {h, x, e_2..e_{(n+1)/2}, x_1.., y_1..}
  //   OPDI {g, e_1, x_1..}    DI {g, h, e_1}    CI {g, e_1}    OCI {x, y, e_1..e_n}
  //   DihedralGroup {g, h}    CyclicGroup {g}
  [[nodiscard]] std::vector<PartialPerm> family_generators(MonoidFamily family,
                                                           std::size_t  n);
  [[nodiscard]] std::size_t minimum_degree(MonoidFamily family) noexcept;
  [[nodiscard]] FiniteMonoid build_named(MonoidFamily family,
                                         std::size_t  n,
                                         std::size_t  cap = default_closure_cap);

  // Defining property of each family as a predicate on I_n, relative to the
  // ambient DI_n (or CI_n) membership.
  [[nodiscard]] bool satisfies_family_predicate(MonoidFamily       family,
                                                PartialPerm const& f);

  // Closed forms for |ODI_n|, |MDI_n| and |OCI_n|; throws for other families.
  [[nodiscard]] std::uint64_t cardinality_formula(MonoidFamily family,
                                                  std::size_t  n);
  // Ranks of ODI_n, MDI_n, OPDI_n; throws for other families.
  [[nodiscard]] std::size_t rank_formula(MonoidFamily family, std::size_t n);

  [[nodiscard]] bool verify_generates(FiniteMonoid const&          m,
                                      std::span<PartialPerm const> gens);

  [[nodiscard]] std::vector<FiniteMonoid::index_type>
  elements_of_rank(FiniteMonoid const& m, std::size_t r);

  // Green's relations as class labels per element (dense, in order of first
  // appearance by element index).  D = J in finite monoids.
  struct GreenClasses {
    std::vector<std::uint32_t> r;
    std::vector<std::uint32_t> l;
    std::vector<std::uint32_t> h;
    std::vector<std::uint32_t> j;
    std::size_t                num_r = 0;
    std::size_t                num_l = 0;
    std::size_t                num_h = 0;
    std::size_t                num_j = 0;
  };

  [[nodiscard]] GreenClasses green_classes(FiniteMonoid const& m);

  // Element indices of the group of units (H-class of the identity).
  [[nodiscard]] std::vector<FiniteMonoid::index_type>
  group_of_units(FiniteMonoid const& m, GreenClasses const& green);

  [[nodiscard]] nlohmann::ordered_json to_json(FiniteMonoid const& m);
  [[nodiscard]] std::string            to_dot(FiniteMonoid const& m);

}  // namespace dimon

#endif  // DIMON_MONOID_HPP_
