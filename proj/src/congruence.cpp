#include "dimon/congruence.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_set>
#include <utility>

#include "dimon/error.hpp"

namespace dimon {

  namespace {

    using node_type = std::uint32_t;

    constexpr node_type undefined_node = std::numeric_limits<node_type>::max();

    struct CapReached {};

    // Right Cayley graph of the quotient, built HLT-style: every relation is
    // pushed at every node, coincidences are merged through a union-find
    // with a FIFO queue.
    class Enumerator {
     public:
      Enumerator(Presentation const& p, EnumerationCaps const& caps)
          : _A(p.alphabet_size()), _caps(caps) {
        for (auto const& r : p.relations) {
          _rels.emplace_back(r.lhs.letters, r.rhs.letters);
        }
        new_node();
      }

      void run() {
        std::size_t threshold = std::max<std::size_t>(_caps.max_classes / 4, 4096);
        for (node_type c = 0; c < _parent.size(); ++c) {
          if (!live(c)) {
            continue;
          }
          for (auto const& [u, v] : _rels) {
            push_relation(c, u, v);
            if (!live(c)) {
              break;
            }
          }
          if (!live(c)) {
            continue;
          }
          for (Letter a = 0; a < _A; ++a) {
            if (edge(c, a) == undefined_node) {
              node_type d = new_node();
              set_edge(c, a, d);
            }
          }
          if (_live > threshold) {
            lookahead(c + 1);
            if (_live > threshold / 2) {
              threshold *= 2;
            }
          }
          if (_parent.size() - _live > std::max<std::size_t>(_live, 1 << 16)) {
            c = compact(c);
          }
        }
        // Every row is complete now; sweep until all relations hold at every
        // node.
        while (lookahead(_parent.size())) {
        }
      }

      [[nodiscard]] std::size_t alphabet_size() const noexcept {
        return _A;
      }

      // BFS from the empty word; fills dense ids, table and the BFS tree.
      void export_to(std::vector<node_type>& table,
                     std::vector<node_type>& parent,
                     std::vector<Letter>&    via,
                     std::size_t&            count) {
        std::vector<node_type> id(_parent.size(), undefined_node);
        std::vector<node_type> order;
        node_type              root = find(0);
        id[root]                    = 0;
        order.push_back(root);
        parent.assign(1, undefined_node);
        via.assign(1, 0);
        for (std::size_t k = 0; k < order.size(); ++k) {
          node_type c = order[k];
          for (Letter a = 0; a < _A; ++a) {
            node_type d = edge(c, a);
            if (id[d] == undefined_node) {
              id[d] = static_cast<node_type>(order.size());
              order.push_back(d);
              parent.push_back(static_cast<node_type>(k));
              via.push_back(a);
            }
          }
        }
        count = order.size();
        table.assign(count * _A, 0);
        for (std::size_t k = 0; k < count; ++k) {
          for (Letter a = 0; a < _A; ++a) {
            table[k * _A + a] = id[edge(order[k], a)];
          }
        }
      }

     private:
      std::size_t                                                    _A;
      EnumerationCaps                                                _caps;
      std::vector<std::pair<std::vector<Letter>, std::vector<Letter>>> _rels;
      std::vector<node_type>                                         _table;
      std::vector<node_type>                                         _parent;
      std::size_t                                                    _live  = 0;
      std::uint64_t                                                  _steps = 0;
      std::deque<std::pair<node_type, node_type>>                    _queue;

      bool live(node_type c) const {
        return _parent[c] == c;
      }

      void step() {
        if (++_steps > _caps.max_steps) {
          throw CapReached{};
        }
      }

      node_type find(node_type c) {
        while (_parent[c] != c) {
          _parent[c] = _parent[_parent[c]];
          c          = _parent[c];
        }
        return c;
      }

      node_type new_node() {
        if (_live >= _caps.max_classes) {
          throw CapReached{};
        }
        auto c = static_cast<node_type>(_parent.size());
        _parent.push_back(c);
        _table.resize(_table.size() + _A, undefined_node);
        ++_live;
        return c;
      }

      node_type edge(node_type c, Letter a) {
        node_type& t = _table[c * _A + a];
        if (t != undefined_node) {
          t = find(t);
        }
        return t;
      }

      void set_edge(node_type c, Letter a, node_type d) {
        _table[c * _A + a] = d;
      }

      node_type trace_defining(node_type c, std::vector<Letter> const& w,
                               std::size_t len) {
        for (std::size_t k = 0; k < len; ++k) {
          step();
          node_type d = edge(c, w[k]);
          if (d == undefined_node) {
            d = new_node();
            set_edge(c, w[k], d);
          }
          c = d;
        }
        return c;
      }

      // Follows w from c without defining; returns the node reached after
      // `len` letters or undefined_node.
      node_type trace(node_type c, std::vector<Letter> const& w, std::size_t len) {
        for (std::size_t k = 0; k < len && c != undefined_node; ++k) {
          step();
          c = edge(c, w[k]);
        }
        return c;
      }

      // Make c.u = c.v given c.u resolves to p, with c.v missing at most its
      // last edge.
      void close(node_type c, node_type p, std::vector<Letter> const& v) {
        if (v.empty()) {
          coincide(p, c);
          return;
        }
        node_type q = trace(c, v, v.size() - 1);
        if (q == undefined_node) {
          return;
        }
        node_type t = edge(q, v.back());
        if (t == undefined_node) {
          set_edge(q, v.back(), p);
        } else if (t != p) {
          coincide(t, p);
        }
      }

      void push_relation(node_type                  c,
                         std::vector<Letter> const& u,
                         std::vector<Letter> const& v) {
        node_type p = trace_defining(c, u, u.size());
        if (!v.empty()) {
          trace_defining(c, v, v.size() - 1);
        }
        close(c, p, v);
      }

      // Applies every relation at nodes [0, limit) without defining new
      // nodes.  Returns true if anything changed.
      bool lookahead(std::size_t limit) {
        bool changed = false;
        for (node_type c = 0; c < std::min(limit, _parent.size()); ++c) {
          for (auto const& [u, v] : _rels) {
            if (!live(c)) {
              break;
            }
            node_type p = trace(c, u, u.size());
            node_type q = trace(c, v, v.size());
            if (p != undefined_node && q != undefined_node) {
              if (p != q) {
                coincide(p, q);
                changed = true;
              }
            } else if (p != undefined_node) {
              std::size_t before = _live;
              if (fill_last(c, v, p)) {
                changed = true;
              }
              changed |= before != _live;
            } else if (q != undefined_node) {
              std::size_t before = _live;
              if (fill_last(c, u, q)) {
                changed = true;
              }
              changed |= before != _live;
            }
          }
        }
        return changed;
      }

      bool fill_last(node_type c, std::vector<Letter> const& w, node_type target) {
        node_type q = trace(c, w, w.size() - 1);
        if (q == undefined_node || edge(q, w.back()) != undefined_node) {
          return false;
        }
        set_edge(q, w.back(), target);
        return true;
      }

      void coincide(node_type a, node_type b) {
        _queue.emplace_back(a, b);
        while (!_queue.empty()) {
          auto [x, y] = _queue.front();
          _queue.pop_front();
          x = find(x);
          y = find(y);
          if (x == y) {
            continue;
          }
          if (x > y) {
            std::swap(x, y);
          }
          step();
          _parent[y] = x;
          --_live;
          for (Letter l = 0; l < _A; ++l) {
            node_type t = _table[y * _A + l];
            if (t == undefined_node) {
              continue;
            }
            node_type s = _table[x * _A + l];
            if (s == undefined_node) {
              _table[x * _A + l] = t;
            } else {
              _queue.emplace_back(s, t);
            }
          }
        }
      }

      // Drops dead nodes, keeping the relative order of live ones.  Returns
      // the new index of the last live node at or before `c`.
      node_type compact(node_type c) {
        std::vector<node_type> id(_parent.size(), undefined_node);
        node_type              next = 0;
        for (node_type k = 0; k < _parent.size(); ++k) {
          if (live(k)) {
            id[k] = next++;
          }
        }
        std::vector<node_type> table(static_cast<std::size_t>(next) * _A);
        for (node_type k = 0; k < _parent.size(); ++k) {
          if (!live(k)) {
            continue;
          }
          for (Letter a = 0; a < _A; ++a) {
            node_type t                          = edge(k, a);
            table[std::size_t(id[k]) * _A + a] = t == undefined_node ? t : id[t];
          }
        }
        node_type new_c = 0;
        for (node_type k = 0; k <= c; ++k) {
          if (live(k)) {
            new_c = id[k];
          }
        }
        _table = std::move(table);
        _parent.resize(next);
        for (node_type k = 0; k < next; ++k) {
          _parent[k] = k;
        }
        return new_c;
      }
    };

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // EnumerationResult
  ////////////////////////////////////////////////////////////////////////

  EnumerationResult::class_type EnumerationResult::action(class_type c, Letter a) const {
    if (!complete()) {
      throw CappedError("enumeration was capped");
    }
    if (c >= _count || a >= _letters.size()) {
      throw Error("action: class or letter out of range");
    }
    return _table[std::size_t(c) * _letters.size() + a];
  }

  Word const& EnumerationResult::representative(class_type c) const {
    if (!complete()) {
      throw CappedError("enumeration was capped");
    }
    return _reps.at(c);
  }

  EnumerationResult enumerate(Presentation const& p, EnumerationCaps const& caps) {
    p.validate();
    if (caps.max_classes == 0 || caps.max_steps == 0) {
      throw Error("enumerate: caps must be positive");
    }
    EnumerationResult result;
    result._letters = p.letters;
    result._caps    = caps;
    Enumerator e(p, caps);
    try {
      e.run();
    } catch (CapReached const&) {
      result._status = EnumerationStatus::capped;
      return result;
    }
    e.export_to(result._table, result._parent, result._via, result._count);
    result._status = EnumerationStatus::complete;
    result._reps.resize(result._count);
    for (std::size_t c = 1; c < result._count; ++c) {
      result._reps[c] = result._reps[result._parent[c]] * Word{result._via[c]};
    }
    return result;
  }

  EnumerationResult::class_type word_class(EnumerationResult const& r, Word const& w) {
    if (!r.complete()) {
      throw CappedError("word_class: enumeration was capped at "
                        + std::to_string(r.caps().max_classes) + " classes");
    }
    EnumerationResult::class_type c = 0;
    for (auto a : w) {
      if (a >= r.alphabet_size()) {
        throw Error("word_class: letter id " + std::to_string(a)
                    + " outside the alphabet");
      }
      c = r.action(c, a);
    }
    return c;
  }

  bool is_consequence(EnumerationResult const& r, Relation const& rel) {
    return word_class(r, rel.lhs) == word_class(r, rel.rhs);
  }

  bool is_consequence(Presentation const&    p,
                      Relation const&        rel,
                      EnumerationCaps const& caps) {
    return is_consequence(enumerate(p, caps), rel);
  }

  FormsSet normal_forms(EnumerationResult const& r) {
    if (!r.complete()) {
      throw CappedError("normal_forms: enumeration was capped");
    }
    FormsSet result;
    for (std::size_t c = 0; c < r.class_count(); ++c) {
      result.words.push_back(r.representative(static_cast<EnumerationResult::class_type>(c)));
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Verification
  ////////////////////////////////////////////////////////////////////////

  std::string_view name(VerdictStatus v) noexcept {
    switch (v) {
      case VerdictStatus::pass:
        return "PASS";
      case VerdictStatus::fail:
        return "FAIL";
      case VerdictStatus::indeterminate:
        return "INDETERMINATE";
    }
    return "?";
  }

  PresentationVerdict verify_presentation(Presentation const&    p,
                                          Assignment const&      a,
                                          FiniteMonoid const&    m,
                                          EnumerationCaps const& caps) {
    if (!verify_generates(m, a.images)) {
      throw Error("verify_presentation: the assigned images do not generate the "
                  "target monoid");
    }
    PresentationVerdict v;
    v.monoid_size     = m.size();
    auto report       = check_relations_hold(p, a);
    v.relations_hold  = report.all_hold;
    v.failing_relations = report.failing;
    auto r            = enumerate(p, caps);
    if (!r.complete()) {
      v.status = VerdictStatus::indeterminate;
      v.detail = "enumeration capped at " + std::to_string(caps.max_classes)
                 + " classes";
      if (!v.relations_hold) {
        v.status = VerdictStatus::fail;
        v.detail += "; " + std::to_string(report.failing.size())
                    + " relation(s) fail under the assignment";
      }
      return v;
    }
    v.class_count = r.class_count();
    if (!v.relations_hold) {
      v.status = VerdictStatus::fail;
      v.detail = std::to_string(report.failing.size())
                 + " relation(s) fail under the assignment";
    } else if (v.class_count != v.monoid_size) {
      v.status = VerdictStatus::fail;
      v.detail = "classes vs |M|: " + std::to_string(v.class_count) + " != "
                 + std::to_string(v.monoid_size);
    } else {
      v.status = VerdictStatus::pass;
      v.detail = "classes vs |M|: " + std::to_string(v.class_count) + " = "
                 + std::to_string(v.monoid_size);
    }
    return v;
  }

  FormsVerdict verify_forms_set(EnumerationResult const& r,
                                FormsSet const&          forms,
                                Assignment const&        a,
                                FiniteMonoid const&      m) {
    FormsVerdict v;
    v.forms       = forms.size();
    v.monoid_size = m.size();
    if (!r.complete()) {
      v.status = VerdictStatus::indeterminate;
      v.detail = "enumeration capped";
      return v;
    }
    v.classes = r.class_count();

    std::vector<bool> hit(r.class_count(), false);
    v.class_distinct = true;
    for (auto const& w : forms.words) {
      auto c = word_class(r, w);
      if (hit[c]) {
        v.class_distinct = false;
      }
      hit[c] = true;
    }
    v.covers_classes = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });

    std::unordered_set<PartialPerm> images;
    bool                            inside = true;
    for (auto const& w : forms.words) {
      auto f = evaluate(w, a);
      inside = inside && m.contains(f);
      images.insert(std::move(f));
    }
    v.bijective = inside && images.size() == forms.size() && images.size() == m.size();

    bool ok = v.class_distinct && v.covers_classes && v.bijective
              && forms.size() == m.size();
    v.status = ok ? VerdictStatus::pass : VerdictStatus::fail;
    v.detail = std::to_string(v.forms) + " forms, " + std::to_string(v.classes)
               + " classes, " + std::to_string(v.monoid_size) + " elements";
    if (!v.class_distinct) {
      v.detail += "; two forms share a class";
    }
    if (!v.covers_classes) {
      v.detail += "; some class has no form";
    }
    if (!v.bijective) {
      v.detail += "; evaluation is not a bijection onto the monoid";
    }
    return v;
  }

  FormsVerdict verify_forms_set(Presentation const&    p,
                                FormsSet const&        forms,
                                Assignment const&      a,
                                FiniteMonoid const&    m,
                                EnumerationCaps const& caps) {
    return verify_forms_set(enumerate(p, caps), forms, a, m);
  }

  ////////////////////////////////////////////////////////////////////////
  // Checked Tietze moves
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool decided_consequence(Presentation const&    p,
                             Relation const&        rel,
                             EnumerationCaps const& caps) {
      auto r = enumerate(p, caps);
      if (!r.complete()) {
        throw CappedError("cannot decide whether " + p.to_string(rel)
                          + " is a consequence: enumeration capped");
      }
      return is_consequence(r, rel);
    }
  }  // namespace

  Presentation add_relation(Presentation const&    p,
                            Relation               rel,
                            EnumerationCaps const& caps) {
    Presentation q = add_relation_unchecked(p, rel);
    if (!decided_consequence(p, rel, caps)) {
      throw Error("add_relation: " + p.to_string(rel) + " is not a consequence of "
                  + p.label);
    }
    return q;
  }

  Presentation delete_relation(Presentation const&    p,
                               std::size_t            index,
                               EnumerationCaps const& caps) {
    Presentation q = delete_relation_unchecked(p, index);
    if (!decided_consequence(q, p.relations[index], caps)) {
      throw Error("delete_relation: " + p.to_string(p.relations[index])
                  + " is not a consequence of the remaining relations");
    }
    return q;
  }

  ////////////////////////////////////////////////////////////////////////
  // Forms
  ////////////////////////////////////////////////////////////////////////

  RelationFamily forms_base_family(RelationFamily family) {
    switch (family) {
      case RelationFamily::R:
        return RelationFamily::U;
      case RelationFamily::Vbar:
        return RelationFamily::V;
      case RelationFamily::Q:
        return RelationFamily::Q0;
      default:
        throw Error("build_forms: no forms construction for family "
                    + std::string(name(family)));
    }
  }

  namespace {
    void require_base(RelationFamily           family,
                      std::size_t              n,
                      EnumerationResult const& base) {
      auto expected = build_alphabet(forms_base_family(family), n);
      if (!base.complete()) {
        throw Error("build_forms: base enumeration is capped");
      }
      if (base.letters() != expected) {
        throw Error("build_forms: base enumeration is not over the alphabet of "
                    + std::string(name(forms_base_family(family))));
      }
    }

    Presentation alphabet_only(std::vector<std::string> letters) {
      Presentation p;
      p.letters = std::move(letters);
      return p;
    }

    void append_translated(FormsSet&           out,
                           FormsSet const&     in,
                           Presentation const& from,
                           Presentation const& to) {
      for (auto const& w : in.words) {
        out.words.push_back(translate(w, from, to));
      }
    }
  }  // namespace

  FormsSet build_forms(RelationFamily family, std::size_t n, EnumerationResult const& base) {
    require_base(family, n, base);
    Presentation const target   = alphabet_only(build_alphabet(family, n));
    Presentation const base_alp = alphabet_only(base.letters());
    FormsSet           result;

    switch (family) {
      case RelationFamily::R: {
        append_translated(result, normal_forms(base), base_alp, target);
        for (auto const& w : forms_w1(target, n).words) {
          result.words.push_back(w);
        }
        for (auto const& w : forms_w2(target, n).words) {
          result.words.push_back(w);
        }
        break;
      }
      case RelationFamily::Vbar: {
        std::vector<Word> reps = normal_forms(base).words;
        std::vector<bool> in_w1(reps.size(), false);
        for (auto const& w : forms_w1_prime(base_alp, n).words) {
          auto c     = word_class(base, w);
          reps[c]    = w;
          in_w1[c]   = true;
        }
        if (!in_w1.empty() && in_w1[0]) {
          throw Error("build_forms: a W'_1 word lies in the class of the empty word");
        }
        FormsSet w_prime{reps};
        append_translated(result, w_prime, base_alp, target);
        Word const h{target.letter("h")};
        for (std::size_t c = 0; c < reps.size(); ++c) {
          if (!in_w1[c]) {
            result.words.push_back(translate(reps[c], base_alp, target) * h);
          }
        }
        break;
      }
      case RelationFamily::Q: {
        int const  N = static_cast<int>(n);
        Word const g{base_alp.letter("g")};
        // index subsets of {1..n}, by size then lexicographically
        std::vector<std::vector<int>> subsets;
        for (unsigned mask = 0; mask < (1u << N); ++mask) {
          std::vector<int> s;
          for (int i = 1; i <= N; ++i) {
            if (mask & (1u << (i - 1))) {
              s.push_back(i);
            }
          }
          subsets.push_back(std::move(s));
        }
        std::stable_sort(subsets.begin(), subsets.end(), [](auto const& a, auto const& b) {
          return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        std::vector<bool> seen(base.class_count(), false);
        std::size_t       found = 0;
        for (int m = 0; m < N && found < seen.size(); ++m) {
          for (auto const& s : subsets) {
            Word w = pow(g, static_cast<std::size_t>(m));
            for (int i : s) {
              w *= Word{base_alp.letter("e_" + std::to_string(i))};
            }
            auto c = word_class(base, w);
            if (!seen[c]) {
              seen[c] = true;
              ++found;
              result.words.push_back(translate(w, base_alp, target));
            }
          }
        }
        if (found != seen.size()) {
          throw Error("build_forms: some Q0 class has no form g^m e_i1 ... e_ik");
        }
        for (auto const& w : forms_g_xi_g(target, n).words) {
          result.words.push_back(w);
        }
        break;
      }
      default:
        break;
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Elimination chains
  ////////////////////////////////////////////////////////////////////////

  std::vector<Presentation> run_tietze_chain(TietzeChain            chain,
                                             std::size_t            n,
                                             EnumerationCaps const& caps) {
    std::vector<Presentation> steps;
    if (chain == TietzeChain::odi) {
      Presentation p = build_relations(RelationFamily::R, n);
      steps.push_back(p);
      p = eliminate_generator(p, "e_" + std::to_string(n), p.word("x y"));
      steps.push_back(p);
      p = eliminate_generator(p, "e_1", p.word("y x"));
      steps.push_back(p);
      return steps;
    }
    Presentation p = build_relations(RelationFamily::Q, n);
    steps.push_back(p);
    Word const g  = p.word("g");
    Word const e1 = p.word("e_1");
    for (std::size_t i = 2; i <= n; ++i) {
      Word def = pow(g, n - i + 1) * e1 * pow(g, i - 1);
      p        = add_relation(p, {p.word("e_" + std::to_string(i)), def, "T1"}, caps);
      steps.push_back(p);
    }
    for (std::size_t i = 2; i <= n; ++i) {
      Word def = pow(Word{p.letter("g")}, n - i + 1) * Word{p.letter("e_1")}
                 * pow(Word{p.letter("g")}, i - 1);
      p        = eliminate_generator(p, "e_" + std::to_string(i), def);
      steps.push_back(p);
    }
    return steps;
  }

  nlohmann::ordered_json to_json(EnumerationResult const& r, bool include_table) {
    nlohmann::ordered_json j;
    if (!r.complete()) {
      j["status"]      = "capped";
      j["max_classes"] = r.caps().max_classes;
      j["max_steps"]   = r.caps().max_steps;
      return j;
    }
    j["status"]  = "complete";
    j["classes"] = r.class_count();
    if (include_table) {
      j["letters"] = r.letters();
      auto rows    = nlohmann::ordered_json::array();
      for (std::size_t c = 0; c < r.class_count(); ++c) {
        auto row = nlohmann::ordered_json::array();
        for (Letter a = 0; a < r.alphabet_size(); ++a) {
          row.push_back(r.action(static_cast<EnumerationResult::class_type>(c), a));
        }
        rows.push_back(std::move(row));
      }
      j["table"] = std::move(rows);
    }
    return j;
  }

}  // namespace dimon
