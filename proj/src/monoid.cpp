#include "dimon/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "dimon/error.hpp"

namespace dimon {

  std::optional<FiniteMonoid::index_type>
  FiniteMonoid::index_of(PartialPerm const& f) const {
    auto it = _lookup.find(f);
    if (it == _lookup.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  FiniteMonoid closure(std::size_t                  degree,
                       std::span<PartialPerm const> gens,
                       std::size_t                  cap) {
    using index_type = FiniteMonoid::index_type;
    for (auto const& s : gens) {
      if (s.degree() != degree) {
        throw Error("closure: generator " + to_string(s) + " has degree "
                    + std::to_string(s.degree()) + ", expected "
                    + std::to_string(degree));
      }
    }
    FiniteMonoid m;
    m._degree = degree;
    auto insert = [&m, cap](PartialPerm f) -> index_type {
      auto [it, inserted]
          = m._lookup.try_emplace(f, static_cast<index_type>(m._elements.size()));
      if (inserted) {
        if (m._elements.size() >= cap) {
          throw CappedError("closure: more than " + std::to_string(cap)
                            + " elements");
        }
        m._elements.push_back(std::move(f));
      }
      return it->second;
    };
    insert(PartialPerm::identity(degree));

    std::size_t const k = gens.size();
    for (std::size_t i = 0; i < m._elements.size(); ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        // m._elements may reallocate inside insert, so copy first.
        PartialPerm prod = compose(m._elements[i], gens[j]);
        m._right.push_back(insert(std::move(prod)));
      }
    }
    for (auto const& s : gens) {
      m._generators.push_back(m._lookup.at(s));
    }
    m._left.resize(m._elements.size() * k);
    for (std::size_t i = 0; i < m._elements.size(); ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        m._left[i * k + j] = m._lookup.at(compose(gens[j], m._elements[i]));
      }
    }
    return m;
  }

  ////////////////////////////////////////////////////////////////////////
  // Named families
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct FamilyName {
      MonoidFamily     family;
      std::string_view name;
    };

    constexpr FamilyName family_names[] = {
        {MonoidFamily::DI, "DI"},
        {MonoidFamily::ODI, "ODI"},
        {MonoidFamily::MDI, "MDI"},
        {MonoidFamily::OPDI, "OPDI"},
        {MonoidFamily::CI, "CI"},
        {MonoidFamily::OCI, "OCI"},
        {MonoidFamily::DihedralGroup, "DihedralGroup"},
        {MonoidFamily::CyclicGroup, "CyclicGroup"},
    };

    bool iequals(std::string_view a, std::string_view b) {
      return a.size() == b.size()
             && std::equal(a.begin(), a.end(), b.begin(), [](char c, char d) {
                  return std::tolower(static_cast<unsigned char>(c))
                         == std::tolower(static_cast<unsigned char>(d));
                });
    }

    std::int64_t pow2(std::size_t k) {
      return std::int64_t{1} << k;
    }

    bool is_restriction_of_rotation(PartialPerm const& f) {
      auto g = gen_g(f.degree());
      auto r = PartialPerm::identity(f.degree());
      for (std::size_t k = 0; k < f.degree(); ++k) {
        if (is_restriction_of(f, r)) {
          return true;
        }
        r = compose(r, g);
      }
      return false;
    }

    bool is_restriction_of_dihedral(PartialPerm const& f) {
      if (is_restriction_of_rotation(f)) {
        return true;
      }
      if (f.degree() < 2) {
        return false;
      }
      auto g = gen_g(f.degree());
      auto r = gen_h(f.degree());
      for (std::size_t k = 0; k < f.degree(); ++k) {
        if (is_restriction_of(f, r)) {
          return true;
        }
        r = compose(r, g);
      }
      return false;
    }
  }  // namespace

  std::string_view name(MonoidFamily family) noexcept {
    for (auto const& fn : family_names) {
      if (fn.family == family) {
        return fn.name;
      }
    }
    return "?";
  }

  std::optional<MonoidFamily> parse_monoid_family(std::string_view s) {
    for (auto const& fn : family_names) {
      if (iequals(fn.name, s)) {
        return fn.family;
      }
    }
    if (iequals(s, "dihedral")) {
      return MonoidFamily::DihedralGroup;
    }
    if (iequals(s, "cyclic")) {
      return MonoidFamily::CyclicGroup;
    }
    return std::nullopt;
  }

  std::size_t minimum_degree(MonoidFamily family) noexcept {
    switch (family) {
      case MonoidFamily::ODI:
      case MonoidFamily::MDI:
      case MonoidFamily::OPDI:
        return 4;
      case MonoidFamily::DI:
      case MonoidFamily::DihedralGroup:
        return 3;
      case MonoidFamily::CI:
      case MonoidFamily::OCI:
      case MonoidFamily::CyclicGroup:
        return 1;
    }
    return 1;
  }

  std::vector<PartialPerm> family_generators(MonoidFamily family, std::size_t n) {
    if (n < minimum_degree(family)) {
      throw Error(std::string(name(family)) + "_n requires n >= "
                  + std::to_string(minimum_degree(family)) + ", got n = "
                  + std::to_string(n));
    }
    std::size_t const        k = half_floor(n);
    std::vector<PartialPerm> gens;
    auto add_xi_yi = [&](bool with_y) {
      for (std::size_t i = 1; i <= k; ++i) {
        gens.push_back(gen_xi(n, i));
      }
      if (with_y) {
        for (std::size_t i = 1; i <= k; ++i) {
          gens.push_back(gen_yi(n, i));
        }
      }
    };
    switch (family) {
      case MonoidFamily::ODI:
        gens = {gen_x(n), gen_y(n)};
        for (std::size_t i = 2; i <= n - 1; ++i) {
          gens.push_back(gen_e(n, i));
        }
        add_xi_yi(true);
        break;
      case MonoidFamily::MDI:
        gens = {gen_h(n), gen_x(n)};
        for (std::size_t i = 2; i <= (n + 1) / 2; ++i) {
          gens.push_back(gen_e(n, i));
        }
        add_xi_yi(true);
        break;
      case MonoidFamily::OPDI:
        gens = {gen_g(n), gen_e(n, 1)};
        add_xi_yi(false);
        break;
      case MonoidFamily::DI:
        gens = {gen_g(n), gen_h(n), gen_e(n, 1)};
        break;
      case MonoidFamily::CI:
        gens = {gen_g(n), gen_e(n, 1)};
        break;
      case MonoidFamily::OCI:
        gens = {gen_x(n), gen_y(n)};
        for (std::size_t i = 1; i <= n; ++i) {
          gens.push_back(gen_e(n, i));
        }
        break;
      case MonoidFamily::DihedralGroup:
        gens = {gen_g(n), gen_h(n)};
        break;
      case MonoidFamily::CyclicGroup:
        gens = {gen_g(n)};
        break;
    }
    return gens;
  }

  FiniteMonoid build_named(MonoidFamily family, std::size_t n, std::size_t cap) {
    auto gens = family_generators(family, n);
    return closure(n, gens, cap);
  }

  bool satisfies_family_predicate(MonoidFamily family, PartialPerm const& f) {
    switch (family) {
      case MonoidFamily::DI:
        return is_restriction_of_dihedral(f);
      case MonoidFamily::ODI:
        return is_restriction_of_dihedral(f) && is_order_preserving(f);
      case MonoidFamily::MDI:
        return is_restriction_of_dihedral(f) && is_monotone(f);
      case MonoidFamily::OPDI:
        return is_restriction_of_dihedral(f) && is_orientation_preserving(f);
      case MonoidFamily::CI:
        return is_restriction_of_rotation(f);
      case MonoidFamily::OCI:
        return is_restriction_of_rotation(f) && is_order_preserving(f);
      case MonoidFamily::DihedralGroup:
        return f.is_total() && is_restriction_of_dihedral(f);
      case MonoidFamily::CyclicGroup:
        return f.is_total() && is_restriction_of_rotation(f);
    }
    return false;
  }

  std::uint64_t cardinality_formula(MonoidFamily family, std::size_t n) {
    auto const N    = static_cast<std::int64_t>(n);
    bool const even = n % 2 == 0;
    switch (family) {
      case MonoidFamily::ODI: {
        if (n < 4) {
          break;
        }
        // 3*2^n + (n+1)n(n-1)/6 - (1+(-1)^n)n^2/8 - 2n - 2
        std::int64_t v = 3 * pow2(n) + (N + 1) * N * (N - 1) / 6 - 2 * N - 2;
        if (even) {
          v -= N * N / 4;
        }
        return static_cast<std::uint64_t>(v);
      }
      case MonoidFamily::MDI: {
        if (n < 4) {
          break;
        }
        // 3*2^(n+1) + (n+1)n(n-1)/3 - (5+(-1)^n)n^2/4 - 4n - 5
        std::int64_t v = 3 * pow2(n + 1) + (N + 1) * N * (N - 1) / 3 - 4 * N - 5;
        v -= even ? (3 * N * N) / 2 : N * N;
        return static_cast<std::uint64_t>(v);
      }
      case MonoidFamily::OCI: {
        if (n < 1) {
          break;
        }
        return static_cast<std::uint64_t>(3 * pow2(n) - 2 * N - 2);
      }
      default:
        throw Error("cardinality_formula: no closed form for "
                    + std::string(name(family)) + "_n; use closure");
    }
    throw Error("cardinality_formula: n = " + std::to_string(n)
                + " below the minimum for " + std::string(name(family)));
  }

  std::size_t rank_formula(MonoidFamily family, std::size_t n) {
    if (n < 4) {
      throw Error("rank_formula: requires n >= 4");
    }
    std::size_t const k = half_floor(n);
    switch (family) {
      case MonoidFamily::ODI:
        return n + 2 * k;
      case MonoidFamily::MDI:
        return 2 + 3 * k;
      case MonoidFamily::OPDI:
        return 2 + k;
      default:
        throw Error("rank_formula: no rank formula for "
                    + std::string(name(family)));
    }
  }

  bool verify_generates(FiniteMonoid const& m, std::span<PartialPerm const> gens) {
    for (auto const& s : gens) {
      if (s.degree() != m.degree() || !m.contains(s)) {
        return false;
      }
    }
    // Closure of a subset is a submonoid; equality of sizes suffices.
    auto sub = closure(m.degree(), gens, m.size() + 1);
    return sub.size() == m.size();
  }

  std::vector<FiniteMonoid::index_type> elements_of_rank(FiniteMonoid const& m,
                                                         std::size_t         r) {
    std::vector<FiniteMonoid::index_type> result;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m.elements()[i].rank() == r) {
        result.push_back(static_cast<FiniteMonoid::index_type>(i));
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Green's relations
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Iterative Tarjan.  `succ(v, out)` appends the successors of v.  Returns
    // a label per vertex, labels dense in order of the smallest vertex of each
    // component.
    template <typename Succ>
    std::pair<std::vector<std::uint32_t>, std::size_t>
    strongly_connected_components(std::size_t n, Succ&& succ) {
      constexpr std::uint32_t       unvisited = UINT32_MAX;
      std::vector<std::uint32_t>    index(n, unvisited), low(n, 0), comp(n, unvisited);
      std::vector<bool>             on_stack(n, false);
      std::vector<std::uint32_t>    stack;
      std::uint32_t                 counter = 0;
      std::uint32_t                 ncomp   = 0;

      struct Frame {
        std::uint32_t              v;
        std::vector<std::uint32_t> succ;
        std::size_t                next;
      };
      std::vector<Frame> call;

      for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) {
          continue;
        }
        auto push = [&](std::uint32_t v) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = true;
          Frame f{v, {}, 0};
          succ(v, f.succ);
          call.push_back(std::move(f));
        };
        push(root);
        while (!call.empty()) {
          auto& f = call.back();
          if (f.next < f.succ.size()) {
            auto w = f.succ[f.next++];
            if (index[w] == unvisited) {
              push(w);
            } else if (on_stack[w]) {
              low[f.v] = std::min(low[f.v], index[w]);
            }
            continue;
          }
          auto v = f.v;
          if (low[v] == index[v]) {
            std::uint32_t w;
            do {
              w = stack.back();
              stack.pop_back();
              on_stack[w] = false;
              comp[w]     = ncomp;
            } while (w != v);
            ++ncomp;
          }
          call.pop_back();
          if (!call.empty()) {
            auto& parent    = call.back();
            low[parent.v] = std::min(low[parent.v], low[v]);
          }
        }
      }
      // Relabel by first appearance.
      std::vector<std::uint32_t> relabel(ncomp, unvisited);
      std::uint32_t              next = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (relabel[comp[v]] == unvisited) {
          relabel[comp[v]] = next++;
        }
        comp[v] = relabel[comp[v]];
      }
      return {std::move(comp), next};
    }
  }  // namespace

  GreenClasses green_classes(FiniteMonoid const& m) {
    std::size_t const k = m.number_of_generators();
    GreenClasses      result;
    std::tie(result.r, result.num_r) = strongly_connected_components(
        m.size(), [&](std::uint32_t v, std::vector<std::uint32_t>& out) {
          for (std::size_t j = 0; j < k; ++j) {
            out.push_back(m.right(v, j));
          }
        });
    std::tie(result.l, result.num_l) = strongly_connected_components(
        m.size(), [&](std::uint32_t v, std::vector<std::uint32_t>& out) {
          for (std::size_t j = 0; j < k; ++j) {
            out.push_back(m.left(v, j));
          }
        });
    std::tie(result.j, result.num_j) = strongly_connected_components(
        m.size(), [&](std::uint32_t v, std::vector<std::uint32_t>& out) {
          for (std::size_t j = 0; j < k; ++j) {
            out.push_back(m.right(v, j));
            out.push_back(m.left(v, j));
          }
        });
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> h_ids;
    result.h.resize(m.size());
    for (std::size_t v = 0; v < m.size(); ++v) {
      auto [it, _] = h_ids.try_emplace({result.r[v], result.l[v]},
                                       static_cast<std::uint32_t>(h_ids.size()));
      result.h[v]  = it->second;
    }
    result.num_h = h_ids.size();
    return result;
  }

  std::vector<FiniteMonoid::index_type> group_of_units(FiniteMonoid const& m,
                                                       GreenClasses const& green) {
    std::vector<FiniteMonoid::index_type> result;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (green.h[v] == green.h[0]) {
        result.push_back(static_cast<FiniteMonoid::index_type>(v));
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Export
  ////////////////////////////////////////////////////////////////////////

  nlohmann::ordered_json to_json(FiniteMonoid const& m) {
    using json  = nlohmann::ordered_json;
    json j;
    j["degree"]   = m.degree();
    j["elements"] = json::array();
    for (auto const& f : m.elements()) {
      j["elements"].push_back(to_json(f));
    }
    j["generators"] = m.generators();
    json right      = json::array();
    json left       = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
      json r = json::array(), l = json::array();
      for (std::size_t g = 0; g < m.number_of_generators(); ++g) {
        r.push_back(m.right(static_cast<FiniteMonoid::index_type>(i), g));
        l.push_back(m.left(static_cast<FiniteMonoid::index_type>(i), g));
      }
      right.push_back(std::move(r));
      left.push_back(std::move(l));
    }
    j["right_cayley"] = std::move(right);
    j["left_cayley"]  = std::move(left);
    return j;
  }

  std::string to_dot(FiniteMonoid const& m) {
    std::ostringstream out;
    out << "digraph right_cayley {\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
      out << "  " << i << " [label=\"" << to_string(m.elements()[i]) << "\"];\n";
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t g = 0; g < m.number_of_generators(); ++g) {
        out << "  " << i << " -> "
            << m.right(static_cast<FiniteMonoid::index_type>(i), g)
            << " [label=\"" << g << "\"];\n";
      }
    }
    out << "}\n";
    return out.str();
  }

}  // namespace dimon
