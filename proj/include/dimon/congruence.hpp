#ifndef DIMON_CONGRUENCE_HPP_
#define DIMON_CONGRUENCE_HPP_

// Two-sided congruence enumeration for finite monoid presentations, and the
// checks built on it: word problem, consequences, presentation and
// forms-set verification, checked Tietze moves.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dimon/monoid.hpp"
#include "dimon/presentation.hpp"
#include "json.hpp"

namespace dimon {

  struct EnumerationCaps {
    std::size_t   max_classes = 1'000'000;
    std::uint64_t max_steps   = 100'000'000;
  };

  enum class EnumerationStatus { complete, capped };

  class EnumerationResult {
   public:
    using class_type = std::uint32_t;

    EnumerationResult() = default;

    [[nodiscard]] EnumerationStatus status() const noexcept {
      return _status;
    }
    [[nodiscard]] bool complete() const noexcept {
      return _status == EnumerationStatus::complete;
    }
    // Number of classes; 0 when capped.
    [[nodiscard]] std::size_t class_count() const noexcept {
      return _count;
    }
    [[nodiscard]] std::size_t alphabet_size() const noexcept {
      return _letters.size();
    }
    [[nodiscard]] std::vector<std::string> const& letters() const noexcept {
      return _letters;
    }
    [[nodiscard]] EnumerationCaps const& caps() const noexcept {
      return _caps;
    }

    // Class reached from class c by appending letter a.
    [[nodiscard]] class_type action(class_type c, Letter a) const;

    // Shortlex-least word of each class, indexed by class id.
    [[nodiscard]] Word const& representative(class_type c) const;

    friend EnumerationResult enumerate(Presentation const&, EnumerationCaps const&);

   private:
    EnumerationStatus        _status = EnumerationStatus::capped;
    std::size_t              _count  = 0;
    std::vector<std::string> _letters;
    EnumerationCaps          _caps;
    std::vector<class_type>  _table;   // class x letter
    std::vector<class_type>  _parent;  // BFS tree, for representatives
    std::vector<Letter>      _via;
    std::vector<Word>        _reps;
  };

  // Class ids are assigned breadth-first from the empty word (class 0),
  // letters in alphabet order.  Never returns a wrong complete answer: if a
  // cap is hit the status is capped.
  [[nodiscard]] EnumerationResult enumerate(Presentation const&    p,
                                            EnumerationCaps const& caps = {});

  // Throws CappedError if r is capped, Error on a letter outside the alphabet.
  [[nodiscard]] EnumerationResult::class_type word_class(EnumerationResult const& r,
                                                         Word const&              w);

  // Throws CappedError if the enumeration is capped.
  [[nodiscard]] bool is_consequence(EnumerationResult const& r, Relation const& rel);
  [[nodiscard]] bool is_consequence(Presentation const&    p,
                                    Relation const&        rel,
                                    EnumerationCaps const& caps = {});

  // The shortlex-least word of every class.
  [[nodiscard]] FormsSet normal_forms(EnumerationResult const& r);

  enum class VerdictStatus { pass, fail, indeterminate };

  [[nodiscard]] std::string_view name(VerdictStatus v) noexcept;

  struct PresentationVerdict {
    VerdictStatus            status = VerdictStatus::indeterminate;
    bool                     relations_hold = false;
    std::vector<std::size_t> failing_relations;
    std::size_t              class_count = 0;  // 0 if capped
    std::size_t              monoid_size = 0;
    std::string              detail;
  };

  // PASS iff every relation holds under `a` and the enumeration has exactly
  // |m| classes.  Throws Error if the images of `a` do not generate m.
  [[nodiscard]] PresentationVerdict verify_presentation(Presentation const&    p,
                                                        Assignment const&      a,
                                                        FiniteMonoid const&    m,
                                                        EnumerationCaps const& caps = {});

  struct FormsVerdict {
    VerdictStatus status = VerdictStatus::indeterminate;
    std::size_t   forms       = 0;
    std::size_t   classes     = 0;
    std::size_t   monoid_size = 0;
    bool          class_distinct = false;
    bool          covers_classes = false;
    bool          bijective      = false;
    std::string   detail;
  };

  // PASS iff the forms lie in pairwise distinct classes, there is exactly one
  // per class, |forms| = |m|, and evaluation maps them bijectively onto m.
  [[nodiscard]] FormsVerdict verify_forms_set(EnumerationResult const& r,
                                              FormsSet const&          forms,
                                              Assignment const&        a,
                                              FiniteMonoid const&      m);
  [[nodiscard]] FormsVerdict verify_forms_set(Presentation const&    p,
                                              FormsSet const&        forms,
                                              Assignment const&      a,
                                              FiniteMonoid const&    m,
                                              EnumerationCaps const& caps = {});

  // Tietze T1 / T2 with the legality check: the added relation must be a
  // consequence of p; the deleted one a consequence of the rest.  Throw
  // Error if illegal, CappedError if undecided.
  [[nodiscard]] Presentation add_relation(Presentation const&    p,
                                          Relation               rel,
                                          EnumerationCaps const& caps = {});
  [[nodiscard]] Presentation delete_relation(Presentation const&    p,
                                             std::size_t            index,
                                             EnumerationCaps const& caps = {});

  // The base presentation whose enumeration build_forms needs:
  // R -> U, Vbar -> V, Q -> Q0.  Throws for other families.
  [[nodiscard]] RelationFamily forms_base_family(RelationFamily family);

  // Forms sets over the family's alphabet:
  //   R:    W_0 + W_1 + W_2, W_0 the shortlex forms of the U enumeration
  //   Vbar: W' + {w h : w in W' \ W'_1}, W' the shortlex forms of the V
  //         enumeration with each W'_1 word replacing its class representative
  //   Q:    per Q0 class the first g^m e_{i_1}..e_{i_k} (m ascending, then
  //         index sets by size, then lexicographically), plus g^r x_i g^s
  // `base` must be a complete enumeration of build_relations(base family, n).
  [[nodiscard]] FormsSet build_forms(RelationFamily           family,
                                     std::size_t              n,
                                     EnumerationResult const& base);

  // The elimination chains: odi removes e_n := x y, e_1 := y x from <A|R>;
  // opdi adds e_i = g^{n-i+1} e_1 g^{i-1} (checked) then removes e_i for
  // i = 2..n from <D|Q>.  Returns every intermediate presentation, the
  // original first.
  enum class TietzeChain { odi, opdi };

  [[nodiscard]] std::vector<Presentation>
  run_tietze_chain(TietzeChain chain, std::size_t n, EnumerationCaps const& caps = {});

  [[nodiscard]] nlohmann::ordered_json to_json(EnumerationResult const& r,
                                               bool include_table = false);

}  // namespace dimon

#endif  // DIMON_CONGRUENCE_HPP_
