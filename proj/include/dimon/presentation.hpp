#ifndef DIMON_PRESENTATION_HPP_
#define DIMON_PRESENTATION_HPP_

// Words, relations and monoid presentations, plus builders for the relation
// families of the dihedral inverse monoid submonoids ODI_n, MDI_n, OPDI_n and
// their auxiliary monoids OCI_n, CI_n.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dimon/iperm.hpp"
#include "dimon/monoid.hpp"
#include "json.hpp"

namespace dimon {

  using Letter = std::uint32_t;

  struct Word {
    std::vector<Letter> letters;

    Word() = default;
    Word(std::initializer_list<Letter> ls) : letters(ls) {}
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

    [[nodiscard]] std::size_t size() const noexcept {
      return letters.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return letters.empty();
    }
    [[nodiscard]] auto begin() const noexcept {
      return letters.begin();
    }
    [[nodiscard]] auto end() const noexcept {
      return letters.end();
    }

    Word& operator*=(Word const& other) {
      letters.insert(letters.end(), other.letters.begin(), other.letters.end());
      return *this;
    }

    friend Word operator*(Word lhs, Word const& rhs) {
      lhs *= rhs;
      return lhs;
    }

    friend bool operator==(Word const&, Word const&) = default;
    // Shortlex: shorter words first, then lexicographic by letter id.
    friend std::strong_ordering operator<=>(Word const& a, Word const& b) {
      if (auto c = a.size() <=> b.size(); c != 0) {
        return c;
      }
      return a.letters <=> b.letters;
    }
  };

  [[nodiscard]] Word pow(Word const& w, std::size_t k);

  struct Relation {
    Word        lhs;
    Word        rhs;
    std::string tag;

    friend bool operator==(Relation const& a, Relation const& b) {
      return a.lhs == b.lhs && a.rhs == b.rhs;
    }
  };

  struct Presentation {
    std::string              label;
    std::vector<std::string> letters;
    std::vector<Relation>    relations;

    [[nodiscard]] std::size_t alphabet_size() const noexcept {
      return letters.size();
    }
    [[nodiscard]] std::optional<Letter> find_letter(std::string_view name) const;
    // Throws if absent.
    [[nodiscard]] Letter letter(std::string_view name) const;
    // Parses space-separated letter names; "" or "1" is the empty word.
    [[nodiscard]] Word word(std::string_view text) const;
    [[nodiscard]] std::string to_string(Word const& w) const;
    [[nodiscard]] std::string to_string(Relation const& r) const;

    // Throws on a letter id out of range.
    void validate() const;
  };

  // Re-expresses w (over `from`) over `to`, matching letters by name.
  [[nodiscard]] Word translate(Word const&         w,
                               Presentation const& from,
                               Presentation const& to);

  enum class RelationFamily { R, U, V, Vbar, VbarPrime, Q, Q0, QPrime };

  [[nodiscard]] std::string_view              name(RelationFamily family) noexcept;
  [[nodiscard]] std::optional<RelationFamily> parse_relation_family(std::string_view s);

  // The alphabet of each family, in the printed order:
  //   R: A = {x, y, e_1..e_n, x_1..x_k, y_1..y_k}     U: C = {x, y, e_1..e_n}
  //   V: B = A \ {e_1, e_n}                           Vbar: {h} + B
  //   VbarPrime: {h, x, e_2..e_{(n+1)/2}, x_1.., y_1..}
  //   Q: D = {g, e_1..e_n, x_1..x_k}    Q0: {g, e_1..e_n}    QPrime: {g, e_1, x_1..}
  // with k = floor((n-1)/2).  Requires n >= 4.
  [[nodiscard]] std::vector<std::string> build_alphabet(RelationFamily family,
                                                        std::size_t    n);

  // The full relation list of the family, index ranges expanded, in printed
  // order.  A printed chain u_1 = u_2 = ... = u_m contributes the m - 1
  // relations u_1 = u_2, u_2 = u_3, ...
  [[nodiscard]] Presentation build_relations(RelationFamily family, std::size_t n);

  // Closed-form relation counts stated alongside each family.
  [[nodiscard]] std::int64_t relation_count_formula(RelationFamily family,
                                                    std::size_t    n);
  // Closed-form alphabet sizes.
  [[nodiscard]] std::int64_t alphabet_size_formula(RelationFamily family,
                                                   std::size_t    n);

  // The monoid each family's presentation is meant to define.
  [[nodiscard]] MonoidFamily target_monoid(RelationFamily family) noexcept;

  // Letter -> transformation, indexed by letter id.
  struct Assignment {
    std::size_t              degree = 0;
    std::vector<PartialPerm> images;
  };

  // Maps each letter to the generator of the same name.
  [[nodiscard]] Assignment assignment_for(Presentation const& p, std::size_t n);
  [[nodiscard]] Assignment build_assignment(RelationFamily family, std::size_t n);

  [[nodiscard]] PartialPerm evaluate(Word const& w, Assignment const& a);

  struct RelationReport {
    bool                     all_hold = true;
    std::vector<std::size_t> failing;  // relation indices
  };

  [[nodiscard]] RelationReport check_relations_hold(Presentation const& p,
                                                    Assignment const&   a);

  // The presentation <{b} + A | R, b^2 = 1, conj, u0> on the alphabet with
  // the new letter prepended (new letter id 0, base letter ids shifted by 1).
  // conj and u0 are given over that extended alphabet; use
  // extended_alphabet_presentation() to build words for them.
  [[nodiscard]] Presentation extended_alphabet_presentation(Presentation const& base,
                                                            std::string const& letter);
  [[nodiscard]] Presentation
  build_extension_presentation(Presentation const&          base,
                               std::string const&           new_letter,
                               std::vector<Relation> const& conj_relations,
                               Relation const&              u0_relation);

  // Tietze T4: remove `letter`, substitute `replacement` for every
  // occurrence, drop relations whose sides become identical.
  [[nodiscard]] Presentation eliminate_generator(Presentation const& p,
                                                 std::string const&  letter,
                                                 Word const&         replacement);

  // Tietze T1 / T2 without legality checks; the checked versions live with
  // the congruence enumerator.
  [[nodiscard]] Presentation add_relation_unchecked(Presentation const& p,
                                                    Relation            rel);
  [[nodiscard]] Presentation delete_relation_unchecked(Presentation const& p,
                                                       std::size_t         index);

  struct FormsSet {
    std::vector<Word> words;

    [[nodiscard]] std::size_t size() const noexcept {
      return words.size();
    }
  };

  // W_1 and W_2: y^r x_i x^s and y^r y_i x^s with their index constraints,
  // over the alphabet of `p` (which must contain x, y, x_i, y_i).
  [[nodiscard]] FormsSet forms_w1(Presentation const& p, std::size_t n);
  [[nodiscard]] FormsSet forms_w2(Presentation const& p, std::size_t n);
  [[nodiscard]] std::int64_t w1_w2_size_formula(std::size_t n);

  // The 1 + n^2 words W'_1 over B (the alphabet of `p`).
  [[nodiscard]] FormsSet forms_w1_prime(Presentation const& p, std::size_t n);

  // g^r x_i g^s, 0 <= r, s <= n-1, 1 <= i <= k, over the alphabet of `p`.
  [[nodiscard]] FormsSet forms_g_xi_g(Presentation const& p, std::size_t n);

  [[nodiscard]] nlohmann::ordered_json to_json(Presentation const& p);
  [[nodiscard]] Presentation           presentation_from_json(nlohmann::ordered_json const& j);

}  // namespace dimon

#endif  // DIMON_PRESENTATION_HPP_
