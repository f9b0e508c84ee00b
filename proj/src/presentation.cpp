#include "dimon/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <utility>

#include "dimon/error.hpp"

namespace dimon {

  Word pow(Word const& w, std::size_t k) {
    Word result;
    result.letters.reserve(w.size() * k);
    for (std::size_t i = 0; i < k; ++i) {
      result *= w;
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentation
  ////////////////////////////////////////////////////////////////////////

  std::optional<Letter> Presentation::find_letter(std::string_view name) const {
    auto it = std::find(letters.begin(), letters.end(), name);
    if (it == letters.end()) {
      return std::nullopt;
    }
    return static_cast<Letter>(it - letters.begin());
  }

  Letter Presentation::letter(std::string_view name) const {
    if (auto l = find_letter(name)) {
      return *l;
    }
    throw Error("presentation " + label + ": no letter named \""
                + std::string(name) + "\"");
  }

  Word Presentation::word(std::string_view text) const {
    Word               w;
    std::istringstream in{std::string(text)};
    std::string        tok;
    while (in >> tok) {
      if (tok == "1") {
        continue;
      }
      w.letters.push_back(letter(tok));
    }
    return w;
  }

  std::string Presentation::to_string(Word const& w) const {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (auto l : w) {
      if (!out.empty()) {
        out += ' ';
      }
      out += l < letters.size() ? letters[l] : "?" + std::to_string(l);
    }
    return out;
  }

  std::string Presentation::to_string(Relation const& r) const {
    std::string out = to_string(r.lhs) + " = " + to_string(r.rhs);
    if (!r.tag.empty()) {
      out += "  (" + r.tag + ")";
    }
    return out;
  }

  void Presentation::validate() const {
    for (std::size_t i = 0; i < relations.size(); ++i) {
      for (auto const* side : {&relations[i].lhs, &relations[i].rhs}) {
        for (auto l : *side) {
          if (l >= letters.size()) {
            throw Error("presentation " + label + ": relation "
                        + std::to_string(i) + " uses letter id "
                        + std::to_string(l) + " outside the alphabet");
          }
        }
      }
    }
  }

  Word translate(Word const& w, Presentation const& from, Presentation const& to) {
    Word result;
    result.letters.reserve(w.size());
    for (auto l : w) {
      result.letters.push_back(to.letter(from.letters.at(l)));
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Family names
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct FamilyName {
      RelationFamily   family;
      std::string_view name;
    };
    constexpr FamilyName relation_family_names[] = {
        {RelationFamily::R, "R"},
        {RelationFamily::U, "U"},
        {RelationFamily::V, "V"},
        {RelationFamily::Vbar, "Vbar"},
        {RelationFamily::VbarPrime, "VbarPrime"},
        {RelationFamily::Q, "Q"},
        {RelationFamily::Q0, "Q0"},
        {RelationFamily::QPrime, "QPrime"},
    };
  }  // namespace

  std::string_view name(RelationFamily family) noexcept {
    for (auto const& fn : relation_family_names) {
      if (fn.family == family) {
        return fn.name;
      }
    }
    return "?";
  }

  std::optional<RelationFamily> parse_relation_family(std::string_view s) {
    for (auto const& fn : relation_family_names) {
      if (fn.name == s) {
        return fn.family;
      }
    }
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
    for (auto const& fn : relation_family_names) {
      std::string cand(fn.name);
      std::transform(cand.begin(), cand.end(), cand.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
      });
      if (cand == lower) {
        return fn.family;
      }
    }
    if (lower == "vbar'" || lower == "vbar_prime") {
      return RelationFamily::VbarPrime;
    }
    if (lower == "q'" || lower == "q_prime") {
      return RelationFamily::QPrime;
    }
    return std::nullopt;
  }

  MonoidFamily target_monoid(RelationFamily family) noexcept {
    switch (family) {
      case RelationFamily::R:
      case RelationFamily::V:
        return MonoidFamily::ODI;
      case RelationFamily::U:
        return MonoidFamily::OCI;
      case RelationFamily::Vbar:
      case RelationFamily::VbarPrime:
        return MonoidFamily::MDI;
      case RelationFamily::Q:
      case RelationFamily::QPrime:
        return MonoidFamily::OPDI;
      case RelationFamily::Q0:
        return MonoidFamily::CI;
    }
    return MonoidFamily::ODI;
  }

  ////////////////////////////////////////////////////////////////////////
  // Alphabets
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::string e_name(int i) {
      return "e_" + std::to_string(i);
    }

    void require_degree(std::size_t n) {
      if (n < 4) {
        throw Error("relation families require n >= 4, got n = "
                    + std::to_string(n));
      }
    }

    void append_xi_yi(std::vector<std::string>& out, std::size_t n, bool with_y) {
      for (std::size_t i = 1; i <= half_floor(n); ++i) {
        out.push_back("x_" + std::to_string(i));
      }
      if (with_y) {
        for (std::size_t i = 1; i <= half_floor(n); ++i) {
          out.push_back("y_" + std::to_string(i));
        }
      }
    }

    void append_es(std::vector<std::string>& out, int lo, int hi) {
      for (int i = lo; i <= hi; ++i) {
        out.push_back(e_name(i));
      }
    }
  }  // namespace

  std::vector<std::string> build_alphabet(RelationFamily family, std::size_t n) {
    require_degree(n);
    int const                N = static_cast<int>(n);
    std::vector<std::string> a;
    switch (family) {
      case RelationFamily::R:
        a = {"x", "y"};
        append_es(a, 1, N);
        append_xi_yi(a, n, true);
        break;
      case RelationFamily::U:
        a = {"x", "y"};
        append_es(a, 1, N);
        break;
      case RelationFamily::V:
        a = {"x", "y"};
        append_es(a, 2, N - 1);
        append_xi_yi(a, n, true);
        break;
      case RelationFamily::Vbar:
        a = {"h", "x", "y"};
        append_es(a, 2, N - 1);
        append_xi_yi(a, n, true);
        break;
      case RelationFamily::VbarPrime:
        a = {"h", "x"};
        append_es(a, 2, (N + 1) / 2);
        append_xi_yi(a, n, true);
        break;
      case RelationFamily::Q:
        a = {"g"};
        append_es(a, 1, N);
        append_xi_yi(a, n, false);
        break;
      case RelationFamily::Q0:
        a = {"g"};
        append_es(a, 1, N);
        break;
      case RelationFamily::QPrime:
        a = {"g", "e_1"};
        append_xi_yi(a, n, false);
        break;
    }
    return a;
  }

  ////////////////////////////////////////////////////////////////////////
  // Relation families
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Word-building context bound to one presentation.
    class Builder {
     public:
      Builder(Presentation& p, std::size_t n)
          : _p(p), N(static_cast<int>(n)), K(static_cast<int>(half_floor(n))) {}

      Word l(std::string const& name) const {
        return Word{_p.letter(name)};
      }
      Word x() const {
        return l("x");
      }
      Word y() const {
        return l("y");
      }
      Word g() const {
        return l("g");
      }
      Word h() const {
        return l("h");
      }
      Word e(int i) const {
        return l(e_name(i));
      }
      Word xi(int i) const {
        return l("x_" + std::to_string(i));
      }
      Word yi(int i) const {
        return l("y_" + std::to_string(i));
      }
      Word one() const {
        return Word{};
      }

      // e_lo e_{lo+1} ... e_hi, omitting indices in `skip`; empty if lo > hi.
      Word es(int lo, int hi, std::initializer_list<int> skip = {}) const {
        Word w;
        for (int i = lo; i <= hi; ++i) {
          if (std::find(skip.begin(), skip.end(), i) == skip.end()) {
            w *= e(i);
          }
        }
        return w;
      }

      void rel(Word lhs, Word rhs, std::string tag) {
        _p.relations.push_back({std::move(lhs), std::move(rhs), std::move(tag)});
      }

      void chain(std::initializer_list<Word> words, std::string const& tag) {
        auto it = words.begin();
        for (auto prev = it++; it != words.end(); prev = it++) {
          rel(*prev, *it, tag);
        }
      }

      static std::string
      tag(std::string_view base,
          std::initializer_list<std::pair<char const*, int>> params = {}) {
        std::string t(base);
        if (params.size() != 0) {
          t += '[';
          bool first = true;
          for (auto [k, v] : params) {
            if (!first) {
              t += ',';
            }
            first = false;
            t += k;
            t += '=';
            t += std::to_string(v);
          }
          t += ']';
        }
        return t;
      }

     private:
      Presentation& _p;

     public:
      int const N;
      int const K;
    };

    Word pw(Word const& w, int k) {
      return pow(w, static_cast<std::size_t>(std::max(k, 0)));
    }

    // R_1 .. R_5 and R_11 share the builder with U.
    void add_r1_to_r5(Builder& b) {
      int const N = b.N;
      for (int i = 1; i <= N; ++i) {
        b.rel(b.e(i) * b.e(i), b.e(i), Builder::tag("R_1", {{"i", i}}));
      }
      b.rel(b.x() * b.y(), b.e(N), "R_2");
      b.rel(b.y() * b.x(), b.e(1), "R_2");
      b.rel(b.x() * b.e(1), b.x(), "R_3");
      b.rel(b.e(1) * b.y(), b.y(), "R_3");
      for (int i = 1; i <= N; ++i) {
        for (int j = i + 1; j <= N; ++j) {
          b.rel(b.e(i) * b.e(j), b.e(j) * b.e(i),
                Builder::tag("R_4", {{"i", i}, {"j", j}}));
        }
      }
      for (int i = 1; i <= N - 1; ++i) {
        b.rel(b.e(i) * b.x(), b.x() * b.e(i + 1), Builder::tag("R_5", {{"i", i}}));
      }
    }

    void add_r11(Builder& b) {
      b.rel(b.x() * b.es(2, b.N), b.es(1, b.N), "R_11");
    }

    void add_r6_to_r10(Builder& b) {
      int const N = b.N;
      int const K = b.K;
      for (int i = 1; i <= K; ++i) {
        auto t = Builder::tag("R_6", {{"i", i}});
        b.rel(b.xi(i) * b.yi(i), b.es(2, N, {i + 1}), t);
        b.rel(b.yi(i) * b.xi(i), b.es(2, N, {N - i + 1}), t);
      }
      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= N; ++j) {
          if (j == N - i + 1) {
            continue;
          }
          auto t = Builder::tag("R_7", {{"i", i}, {"j", j}});
          b.rel(b.xi(i) * b.e(j), b.xi(i), t);
          b.rel(b.e(j) * b.yi(i), b.yi(i), t);
        }
      }
      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= N; ++j) {
          if (j == i + 1) {
            continue;
          }
          auto t = Builder::tag("R_8", {{"i", i}, {"j", j}});
          b.rel(b.e(j) * b.xi(i), b.xi(i), t);
          b.rel(b.yi(i) * b.e(j), b.yi(i), t);
        }
      }
      for (int i = 1; i <= K; ++i) {
        auto t = Builder::tag("R_9", {{"i", i}});
        b.chain({b.e(1) * b.xi(i),
                 b.xi(i) * b.e(1),
                 pw(b.x(), N - 2 * i) * b.es(N - 2 * i + 1, N, {N - i + 1})},
                t);
        b.chain({b.e(1) * b.yi(i),
                 b.yi(i) * b.e(1),
                 pw(b.y(), N - 2 * i) * b.es(1, 2 * i, {i + 1})},
                t);
      }
      for (int i = 1; i <= K; ++i) {
        b.chain({b.xi(i) * b.e(N - i + 1),
                 b.e(i + 1) * b.xi(i),
                 b.yi(i) * b.e(i + 1),
                 b.e(N - i + 1) * b.yi(i),
                 b.es(2, N)},
                Builder::tag("R_10", {{"i", i}}));
      }
    }

    // V_1 .. V_14; usable on any alphabet containing B.
    void add_v(Builder& b) {
      int const N = b.N;
      int const K = b.K;
      auto const x = b.x();
      auto const y = b.y();
      auto const xy = x * y;
      auto const yx = y * x;
      for (int i = 2; i <= N - 1; ++i) {
        b.rel(b.e(i) * b.e(i), b.e(i), Builder::tag("V_1", {{"i", i}}));
      }
      b.rel(x * y * x, x, "V_2");
      b.rel(y * x * y, y, "V_2");
      b.rel(y * x * x * y, x * y * y * x, "V_3");
      for (int i = 2; i <= N - 1; ++i) {
        for (int j = i + 1; j <= N - 1; ++j) {
          b.rel(b.e(i) * b.e(j), b.e(j) * b.e(i),
                Builder::tag("V_4", {{"i", i}, {"j", j}}));
        }
      }
      for (int i = 2; i <= N - 1; ++i) {
        auto t = Builder::tag("V_5", {{"i", i}});
        b.rel(xy * b.e(i), b.e(i) * xy, t);
        b.rel(yx * b.e(i), b.e(i) * yx, t);
      }
      for (int i = 2; i <= N - 2; ++i) {
        b.rel(x * b.e(i + 1), b.e(i) * x, Builder::tag("V_6", {{"i", i}}));
      }
      b.rel(x * x * y, b.e(N - 1) * x, "V_7");
      b.rel(y * x * x, x * b.e(2), "V_7");
      b.rel(yx * b.es(2, N - 1) * xy, x * b.es(2, N - 1) * xy, "V_8");

      for (int i = 1; i <= K; ++i) {
        b.rel(b.xi(i) * b.yi(i), b.es(2, N - 1, {i + 1}) * xy,
              Builder::tag("V_9", {{"i", i}}));
      }
      b.rel(b.yi(1) * b.xi(1), b.es(2, N - 1), Builder::tag("V_9", {{"i", 1}}));
      for (int i = 2; i <= K; ++i) {
        b.rel(b.yi(i) * b.xi(i), b.es(2, N - 1, {N - i + 1}) * xy,
              Builder::tag("V_9", {{"i", i}}));
      }
      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= N - 1; ++j) {
          if (j == N - i + 1) {
            continue;
          }
          auto t = Builder::tag("V_10", {{"i", i}, {"j", j}});
          b.rel(b.xi(i) * b.e(j), b.xi(i), t);
          b.rel(b.e(j) * b.yi(i), b.yi(i), t);
        }
      }
      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= N - 1; ++j) {
          if (j == i + 1) {
            continue;
          }
          auto t = Builder::tag("V_11", {{"i", i}, {"j", j}});
          b.rel(b.e(j) * b.xi(i), b.xi(i), t);
          b.rel(b.yi(i) * b.e(j), b.yi(i), t);
        }
      }
      for (int i = 2; i <= K; ++i) {
        auto t = Builder::tag("V_12", {{"i", i}});
        b.chain({b.xi(i) * xy, xy * b.xi(i), b.xi(i)}, t);
        b.chain({xy * b.yi(i), b.yi(i) * xy, b.yi(i)}, t);
      }
      b.rel(xy * b.xi(1), b.xi(1), Builder::tag("V_12", {{"i", 1}}));
      b.rel(b.yi(1) * xy, b.yi(1), Builder::tag("V_12", {{"i", 1}}));

      b.chain({yx * b.xi(1), b.xi(1) * yx, pw(x, N - 2) * b.e(N - 1)},
              Builder::tag("V_13", {{"i", 1}}));
      for (int i = 2; i <= K; ++i) {
        b.chain({yx * b.xi(i),
                 b.xi(i) * yx,
                 pw(x, N - 2 * i) * b.es(N - 2 * i + 1, N - 1, {N - i + 1}) * xy},
                Builder::tag("V_13", {{"i", i}}));
      }
      for (int i = 1; i <= K; ++i) {
        b.chain({yx * b.yi(i),
                 b.yi(i) * yx,
                 pw(y, N - 2 * i + 1) * x * b.es(2, 2 * i, {i + 1})},
                Builder::tag("V_13", {{"i", i}}));
      }

      b.chain({b.xi(1) * xy,
               b.e(2) * b.xi(1),
               b.yi(1) * b.e(2),
               xy * b.yi(1),
               b.es(2, N - 1) * xy},
              Builder::tag("V_14", {{"i", 1}}));
      for (int i = 2; i <= K; ++i) {
        b.chain({b.xi(i) * b.e(N - i + 1),
                 b.e(i + 1) * b.xi(i),
                 b.yi(i) * b.e(i + 1),
                 b.e(N - i + 1) * b.yi(i),
                 b.es(2, N - 1) * xy},
                Builder::tag("V_14", {{"i", i}}));
      }
    }

    void add_vbar_0(Builder& b) {
      b.rel(b.h() * b.h(), b.one(), "Vbar_0");
    }

    void add_vbar_1(Builder& b) {
      int const N = b.N;
      int const K = b.K;
      auto const h = b.h();
      auto const x = b.x();
      auto const y = b.y();
      b.rel(h * x, y * h, "Vbar_1");
      for (int i = 2; i <= (N + 1) / 2; ++i) {
        b.rel(h * b.e(i), b.e(N - i + 1) * h, Builder::tag("Vbar_1", {{"i", i}}));
      }
      for (int i = 1; i <= K; ++i) {
        auto t = Builder::tag("Vbar_1", {{"i", i}});
        b.rel(h * b.xi(i), pw(y, N - i - 1) * b.xi(i) * pw(x, i - 1) * h, t);
        b.rel(h * b.yi(i), pw(y, i - 1) * b.yi(i) * pw(x, N - i - 1) * h, t);
      }
    }

    void add_vbar_2(Builder& b) {
      b.rel(b.es(2, b.N - 1) * b.x() * b.y() * b.h(), pw(b.x(), b.N - 1), "Vbar_2");
    }

    void add_vbar_prime(Builder& b) {
      int const  N  = b.N;
      int const  K  = b.K;
      int const  P  = (N + 1) / 2;  // floor((n+1)/2)
      int const  Hf = N / 2;        // floor(n/2)
      auto const h  = b.h();
      auto const x  = b.x();
      auto const xh2 = x * h * x * h;  // (xh)^2, the image of xy
      auto const hx2 = h * x * h * x;  // (hx)^2, the image of yx
      // h e_j h, the image of e_{n-j+1}
      auto hej = [&](int j) { return h * b.e(j) * h; };
      // e_2 .. e_P h e_2 .. e_Hf, optionally skipping in each block
      auto const full_lo  = b.es(2, P);
      auto const full_hi  = b.es(2, Hf);

      for (int i = 2; i <= P; ++i) {
        b.rel(b.e(i) * b.e(i), b.e(i), Builder::tag("V'_1", {{"i", i}}));
      }
      b.rel(xh2 * x, x, "V'_2");
      b.rel(x * h * x * x * h * x * h, h * x * h * x * x * h * x, "V'_3");
      for (int i = 2; i <= P; ++i) {
        for (int j = i + 1; j <= P; ++j) {
          b.rel(b.e(i) * b.e(j), b.e(j) * b.e(i),
                Builder::tag("V'_4", {{"i", i}, {"j", j}}));
        }
      }
      for (int i = 2; i <= P; ++i) {
        for (int j = 2; j <= Hf; ++j) {
          b.rel(b.e(i) * hej(j), hej(j) * b.e(i),
                Builder::tag("V'_4", {{"i", i}, {"j", j}}));
        }
      }
      for (int i = 2; i <= P; ++i) {
        auto t = Builder::tag("V'_5", {{"i", i}});
        b.rel(xh2 * b.e(i), b.e(i) * xh2, t);
        b.rel(hx2 * b.e(i), b.e(i) * hx2, t);
      }
      for (int i = 2; i <= K; ++i) {
        b.rel(x * b.e(i + 1), b.e(i) * x, Builder::tag("V'_6", {{"i", i}}));
      }
      b.rel(x * hej(Hf), b.e(P) * x, "V'_6");
      for (int i = 2; i <= (N - 2) / 2; ++i) {
        b.rel(x * hej(i), hej(i + 1) * x, Builder::tag("V'_6", {{"i", i}}));
      }
      b.rel(x * xh2, hej(2) * x, "V'_7");
      b.rel(hx2 * x, x * b.e(2), "V'_7");
      b.rel(hx2 * full_lo * h * full_hi * hx2, x * full_lo * h * full_hi * hx2,
            "V'_8");

      // u_0 in the new alphabet: e_2 .. e_P h e_2 .. e_Hf h (xh)^2
      auto const u0 = full_lo * h * full_hi * h * xh2;
      for (int i = 1; i <= K; ++i) {
        b.rel(b.xi(i) * b.yi(i), b.es(2, P, {i + 1}) * h * full_hi * h * xh2,
              Builder::tag("V'_9", {{"i", i}}));
      }
      b.rel(b.yi(1) * b.xi(1), full_lo * h * full_hi * h,
            Builder::tag("V'_9", {{"i", 1}}));
      for (int i = 2; i <= K; ++i) {
        b.rel(b.yi(i) * b.xi(i), full_lo * h * b.es(2, Hf, {i}) * h * xh2,
              Builder::tag("V'_9", {{"i", i}}));
      }

      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= P; ++j) {
          auto t = Builder::tag("V'_10", {{"i", i}, {"j", j}});
          b.rel(b.xi(i) * b.e(j), b.xi(i), t);
          b.rel(b.e(j) * b.yi(i), b.yi(i), t);
        }
      }
      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= Hf; ++j) {
          if (j == i) {
            continue;
          }
          auto t = Builder::tag("V'_10", {{"i", i}, {"j", j}});
          b.rel(b.xi(i) * hej(j), b.xi(i), t);
          b.rel(hej(j) * b.yi(i), b.yi(i), t);
        }
      }
      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= P; ++j) {
          if (j == i + 1) {
            continue;
          }
          auto t = Builder::tag("V'_11", {{"i", i}, {"j", j}});
          b.rel(b.e(j) * b.xi(i), b.xi(i), t);
          b.rel(b.yi(i) * b.e(j), b.yi(i), t);
        }
      }
      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= Hf; ++j) {
          auto t = Builder::tag("V'_11", {{"i", i}, {"j", j}});
          b.rel(hej(j) * b.xi(i), b.xi(i), t);
          b.rel(b.yi(i) * hej(j), b.yi(i), t);
        }
      }

      for (int i = 2; i <= K; ++i) {
        auto t = Builder::tag("V'_12", {{"i", i}});
        b.chain({b.xi(i) * xh2, xh2 * b.xi(i), b.xi(i)}, t);
        b.chain({xh2 * b.yi(i), b.yi(i) * xh2, b.yi(i)}, t);
      }
      b.rel(xh2 * b.xi(1), b.xi(1), Builder::tag("V'_12", {{"i", 1}}));
      b.rel(b.yi(1) * xh2, b.yi(1), Builder::tag("V'_12", {{"i", 1}}));

      b.chain({hx2 * b.xi(1), b.xi(1) * hx2, pw(x, N - 2) * hej(2)},
              Builder::tag("V'_13", {{"i", 1}}));
      for (int i = 2; i <= K; ++i) {
        b.chain({hx2 * b.xi(i),
                 b.xi(i) * hx2,
                 pw(x, N - 2 * i) * b.es(N - 2 * i + 1, P) * h * b.es(2, Hf, {i}) * h
                     * xh2},
                Builder::tag("V'_13", {{"i", i}}));
      }
      for (int i = 1; i <= K; ++i) {
        b.chain({hx2 * b.yi(i),
                 b.yi(i) * hx2,
                 h * pw(x, N - 2 * i + 1) * h * x * b.es(2, P, {i + 1}) * h
                     * b.es(N - 2 * i + 1, Hf) * h},
                Builder::tag("V'_13", {{"i", i}}));
      }

      b.chain({b.xi(1) * xh2, b.e(2) * b.xi(1), b.yi(1) * b.e(2), xh2 * b.yi(1), u0},
              Builder::tag("V'_14", {{"i", 1}}));
      for (int i = 2; i <= K; ++i) {
        b.chain({b.xi(i) * hej(i),
                 b.e(i + 1) * b.xi(i),
                 b.yi(i) * b.e(i + 1),
                 hej(i) * b.yi(i),
                 u0},
                Builder::tag("V'_14", {{"i", i}}));
      }

      b.rel(h * h, b.one(), "Vbar'_0");
      if (N % 2 == 1) {
        b.rel(h * b.e(P), b.e(P) * h, "Vbar'_1");
      }
      for (int i = 1; i <= K; ++i) {
        auto t = Builder::tag("Vbar'_1", {{"i", i}});
        b.rel(h * b.xi(i), h * pw(x, N - i - 1) * h * b.xi(i) * pw(x, i - 1) * h, t);
        b.rel(h * b.yi(i), h * pw(x, i - 1) * h * b.yi(i) * pw(x, N - i - 1) * h, t);
      }
      b.rel(full_lo * h * full_hi * hx2, pw(x, N - 1), "Vbar'_2");
    }

    void add_q1_to_q5(Builder& b) {
      int const N = b.N;
      auto const g = b.g();
      b.rel(pw(g, N), b.one(), "Q_1");
      for (int i = 1; i <= N; ++i) {
        b.rel(b.e(i) * b.e(i), b.e(i), Builder::tag("Q_2", {{"i", i}}));
      }
      for (int i = 1; i <= N; ++i) {
        for (int j = i + 1; j <= N; ++j) {
          b.rel(b.e(i) * b.e(j), b.e(j) * b.e(i),
                Builder::tag("Q_3", {{"i", i}, {"j", j}}));
        }
      }
      b.rel(g * b.e(1), b.e(N) * g, "Q_4");
      for (int i = 1; i <= N - 1; ++i) {
        b.rel(g * b.e(i + 1), b.e(i) * g, Builder::tag("Q_4", {{"i", i}}));
      }
      b.rel(g * b.es(1, N), b.es(1, N), "Q_5");
    }

    void add_q6_to_q10(Builder& b) {
      int const N = b.N;
      int const K = b.K;
      auto const g = b.g();
      for (int i = 1; i <= K; ++i) {
        b.chain({b.e(1) * b.xi(i),
                 b.xi(i) * b.e(1),
                 pw(g, N - 2 * i) * b.es(1, N, {N - i + 1})},
                Builder::tag("Q_6", {{"i", i}}));
      }
      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= N; ++j) {
          if (j != N - i + 1) {
            b.rel(b.xi(i) * b.e(j), b.xi(i), Builder::tag("Q_7", {{"i", i}, {"j", j}}));
          }
        }
      }
      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= N; ++j) {
          if (j != i + 1) {
            b.rel(b.e(j) * b.xi(i), b.xi(i), Builder::tag("Q_8", {{"i", i}, {"j", j}}));
          }
        }
      }
      for (int i = 1; i <= K; ++i) {
        b.chain({b.xi(i) * b.e(N - i + 1), b.e(i + 1) * b.xi(i), b.es(2, N)},
                Builder::tag("Q_9", {{"i", i}}));
      }
      for (int i = 1; i <= K; ++i) {
        b.rel(pw(b.xi(i) * pw(g, i), 2), b.es(2, N, {i + 1}),
              Builder::tag("Q_10", {{"i", i}}));
      }
    }

    void add_q_prime(Builder& b) {
      int const  N  = b.N;
      int const  K  = b.K;
      auto const g  = b.g();
      auto const e1 = b.e(1);
      auto const E  = e1 * pw(g, N - 1);  // e_1 g^{n-1}
      // g^{n-j+1} e_1 g^{j-1}, the image of e_j
      auto ej = [&](int j) { return pw(g, N - j + 1) * e1 * pw(g, j - 1); };

      b.rel(pw(g, N), b.one(), "Q'_1");
      b.rel(e1 * e1, e1, "Q'_2");
      for (int i = 1; i <= N; ++i) {
        for (int j = i + 1; j <= N; ++j) {
          b.rel(e1 * pw(g, N - j + i) * e1 * pw(g, N - i + j),
                pw(g, N - j + i) * e1 * pw(g, N - i + j) * e1,
                Builder::tag("Q'_3", {{"i", i}, {"j", j}}));
        }
      }
      b.rel(g * pw(E, N), pw(E, N), "Q'_5");
      // The printed right side omits the g^{n-2} after the middle e_1; this
      // is the image of Q_6 under e_j -> g^{n-j+1} e_1 g^{j-1}.
      for (int i = 1; i <= K; ++i) {
        b.chain({e1 * b.xi(i),
                 b.xi(i) * e1,
                 pw(g, N - 2 * i) * pw(E, N - i - 1) * e1 * pw(g, N - 2)
                     * pw(E, i - 1)},
                Builder::tag("Q'_6", {{"i", i}}));
      }
      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= N; ++j) {
          if (j != N - i + 1) {
            b.rel(b.xi(i) * ej(j), b.xi(i), Builder::tag("Q'_7", {{"i", i}, {"j", j}}));
          }
        }
      }
      for (int i = 1; i <= K; ++i) {
        for (int j = 2; j <= N; ++j) {
          if (j != i + 1) {
            b.rel(ej(j) * b.xi(i), b.xi(i), Builder::tag("Q'_8", {{"i", i}, {"j", j}}));
          }
        }
      }
      for (int i = 1; i <= K; ++i) {
        b.chain({b.xi(i) * pw(g, i) * e1 * pw(g, N - i),
                 pw(g, N - i) * e1 * pw(g, i) * b.xi(i),
                 pw(g, N - 1) * pw(E, N - 1)},
                Builder::tag("Q'_9", {{"i", i}}));
      }
      for (int i = 1; i <= K; ++i) {
        // At i = 1 the printed right side g^{n-1} E^{-1} e_1 g^{n-2} E^{n-2}
        // reduces formally to g^{n-2} E^{n-2}.
        Word rhs = i >= 2 ? pw(g, N - 1) * pw(E, i - 2) * e1 * pw(g, N - 2)
                                * pw(E, N - i - 1)
                          : pw(g, N - 2) * pw(E, N - 2);
        b.rel(pw(b.xi(i) * pw(g, i), 2), rhs, Builder::tag("Q'_10", {{"i", i}}));
      }
    }

    std::string label_for(RelationFamily family, std::size_t n) {
      return std::string(name(family)) + "(n=" + std::to_string(n) + ")";
    }
  }  // namespace

  Presentation build_relations(RelationFamily family, std::size_t n) {
    Presentation p;
    p.label   = label_for(family, n);
    p.letters = build_alphabet(family, n);
    Builder b(p, n);
    switch (family) {
      case RelationFamily::R:
        add_r1_to_r5(b);
        add_r6_to_r10(b);
        add_r11(b);
        break;
      case RelationFamily::U:
        add_r1_to_r5(b);
        add_r11(b);
        break;
      case RelationFamily::V:
        add_v(b);
        break;
      case RelationFamily::Vbar:
        add_v(b);
        add_vbar_0(b);
        add_vbar_1(b);
        add_vbar_2(b);
        break;
      case RelationFamily::VbarPrime:
        add_vbar_prime(b);
        break;
      case RelationFamily::Q:
        add_q1_to_q5(b);
        add_q6_to_q10(b);
        break;
      case RelationFamily::Q0:
        add_q1_to_q5(b);
        break;
      case RelationFamily::QPrime:
        add_q_prime(b);
        break;
    }
    p.validate();
    return p;
  }

  std::int64_t relation_count_formula(RelationFamily family, std::size_t n) {
    require_degree(n);
    auto const   N = static_cast<std::int64_t>(n);
    std::int64_t s = n % 2 == 0 ? 1 : -1;  // (-1)^n
    // Numerator and denominator of each stated formula.
    std::int64_t num = 0, den = 1;
    switch (family) {
      case RelationFamily::R:
        num = 5 * N * N - (1 + 2 * s) * N - s + 5;
        den = 2;
        break;
      case RelationFamily::U:
        num = N * N + 3 * N + 8;
        den = 2;
        break;
      case RelationFamily::V:
        num = 5 * N * N - (1 + 2 * s) * N - s - 3;
        den = 2;
        break;
      case RelationFamily::Vbar:
        // (5n^2 + (2 - 2s)n - (3 + 5s)/2) / 2
        num = 10 * N * N + 2 * (2 - 2 * s) * N - (3 + 5 * s);
        den = 4;
        break;
      case RelationFamily::VbarPrime:
        // 2n^2 + (7 - s)n/4 - 2s - 1
        num = 8 * N * N + (7 - s) * N - 8 * s - 4;
        den = 4;
        break;
      case RelationFamily::Q:
        // (3n^2 + (1 - s)n + 3 - (1 + s)/2) / 2
        num = 6 * N * N + 2 * (1 - s) * N + 6 - (1 + s);
        den = 4;
        break;
      case RelationFamily::Q0:
        num = N * N + 3 * N + 4;
        den = 2;
        break;
      case RelationFamily::QPrime:
        // (3n^2 - (3 + s)n + 5 - (1 + s)/2) / 2
        num = 6 * N * N - 2 * (3 + s) * N + 10 - (1 + s);
        den = 4;
        break;
    }
    if (num % den != 0) {
      throw Error("relation_count_formula: non-integral value for "
                  + label_for(family, n));
    }
    return num / den;
  }

  std::int64_t alphabet_size_formula(RelationFamily family, std::size_t n) {
    require_degree(n);
    auto const   N = static_cast<std::int64_t>(n);
    auto const   K = static_cast<std::int64_t>(half_floor(n));
    std::int64_t s = n % 2 == 0 ? 1 : -1;
    switch (family) {
      case RelationFamily::R:
        return 2 * N + (1 - s) / 2;
      case RelationFamily::U:
        return N + 2;
      case RelationFamily::V:
        return 2 * N - (3 + s) / 2;
      case RelationFamily::Vbar:
        return 2 * N - (1 + s) / 2;
      case RelationFamily::VbarPrime:
        return 2 + 3 * K;
      case RelationFamily::Q:
        return N + K + 1;
      case RelationFamily::Q0:
        return N + 1;
      case RelationFamily::QPrime:
        return 2 + K;
    }
    return 0;
  }

  ////////////////////////////////////////////////////////////////////////
  // Assignments and evaluation
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::optional<std::size_t> parse_index(std::string_view s) {
      std::size_t v   = 0;
      auto [ptr, ec]  = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
      }
      return v;
    }

    PartialPerm generator_for_name(std::string_view name, std::size_t n) {
      if (name == "x") {
        return gen_x(n);
      } else if (name == "y") {
        return gen_y(n);
      } else if (name == "g") {
        return gen_g(n);
      } else if (name == "h") {
        return gen_h(n);
      } else if (name.size() > 2 && name[1] == '_') {
        if (auto i = parse_index(name.substr(2))) {
          switch (name[0]) {
            case 'e':
              return gen_e(n, *i);
            case 'x':
              return gen_xi(n, *i);
            case 'y':
              return gen_yi(n, *i);
            default:
              break;
          }
        }
      }
      throw Error("no generator named \"" + std::string(name) + "\"");
    }
  }  // namespace

  Assignment assignment_for(Presentation const& p, std::size_t n) {
    Assignment a{n, {}};
    for (auto const& name : p.letters) {
      a.images.push_back(generator_for_name(name, n));
    }
    return a;
  }

  Assignment build_assignment(RelationFamily family, std::size_t n) {
    Presentation p;
    p.letters = build_alphabet(family, n);
    return assignment_for(p, n);
  }

  PartialPerm evaluate(Word const& w, Assignment const& a) {
    PartialPerm result = PartialPerm::identity(a.degree);
    for (auto l : w) {
      if (l >= a.images.size()) {
        throw Error("evaluate: letter id " + std::to_string(l)
                    + " has no assigned image");
      }
      result = compose(result, a.images[l]);
    }
    return result;
  }

  RelationReport check_relations_hold(Presentation const& p, Assignment const& a) {
    if (a.images.size() != p.alphabet_size()) {
      throw Error("check_relations_hold: assignment has "
                  + std::to_string(a.images.size()) + " images for "
                  + std::to_string(p.alphabet_size()) + " letters");
    }
    RelationReport report;
    for (std::size_t i = 0; i < p.relations.size(); ++i) {
      auto const& r = p.relations[i];
      if (evaluate(r.lhs, a) != evaluate(r.rhs, a)) {
        report.all_hold = false;
        report.failing.push_back(i);
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Extension construction and Tietze moves
  ////////////////////////////////////////////////////////////////////////

  Presentation extended_alphabet_presentation(Presentation const& base,
                                              std::string const&  letter) {
    if (base.find_letter(letter)) {
      throw Error("extension: letter \"" + letter + "\" already in the alphabet");
    }
    Presentation ext;
    ext.label = base.label + "+" + letter;
    ext.letters.push_back(letter);
    ext.letters.insert(ext.letters.end(), base.letters.begin(), base.letters.end());
    return ext;
  }

  Presentation build_extension_presentation(Presentation const&          base,
                                            std::string const&           new_letter,
                                            std::vector<Relation> const& conj,
                                            Relation const&              u0_relation) {
    Presentation ext = extended_alphabet_presentation(base, new_letter);
    Letter const b   = 0;
    auto shift = [](Word const& w) {
      Word out;
      for (auto l : w) {
        out.letters.push_back(l + 1);
      }
      return out;
    };
    auto over_base = [b](auto first, auto last) {
      return std::none_of(first, last, [b](Letter l) { return l == b; });
    };
    for (auto const& c : conj) {
      bool ok = c.lhs.size() == 2 && c.lhs.letters[0] == b && c.lhs.letters[1] != b
                && !c.rhs.empty() && c.rhs.letters.back() == b
                && over_base(c.rhs.begin(), c.rhs.end() - 1);
      if (!ok) {
        throw Error("extension: conjugation relation " + ext.to_string(c)
                    + " is not of the form b a = v b");
      }
    }
    {
      auto const& u = u0_relation;
      bool ok = !u.lhs.empty() && u.lhs.letters.back() == b
                && over_base(u.lhs.begin(), u.lhs.end() - 1)
                && over_base(u.rhs.begin(), u.rhs.end());
      if (!ok) {
        throw Error("extension: relation " + ext.to_string(u)
                    + " is not of the form u_0 b = v_0");
      }
    }
    for (auto const& r : base.relations) {
      ext.relations.push_back({shift(r.lhs), shift(r.rhs), r.tag});
    }
    ext.relations.push_back({Word{b, b}, Word{}, "Rbar_0"});
    for (auto const& c : conj) {
      ext.relations.push_back(c);
    }
    ext.relations.push_back(u0_relation);
    ext.validate();
    return ext;
  }

  Presentation eliminate_generator(Presentation const& p,
                                   std::string const&  letter,
                                   Word const&         replacement) {
    Letter const b = p.letter(letter);
    if (std::find(replacement.begin(), replacement.end(), b) != replacement.end()) {
      throw Error("eliminate_generator: replacement for " + letter
                  + " contains " + letter);
    }
    auto substitute = [&](Word const& w) {
      Word out;
      for (auto l : w) {
        if (l == b) {
          for (auto r : replacement) {
            out.letters.push_back(r > b ? r - 1 : r);
          }
        } else {
          out.letters.push_back(l > b ? l - 1 : l);
        }
      }
      return out;
    };
    Presentation q;
    q.label   = p.label + "\\" + letter;
    q.letters = p.letters;
    q.letters.erase(q.letters.begin() + b);
    for (auto const& r : p.relations) {
      Relation s{substitute(r.lhs), substitute(r.rhs), r.tag};
      if (s.lhs != s.rhs) {
        q.relations.push_back(std::move(s));
      }
    }
    q.validate();
    return q;
  }

  Presentation add_relation_unchecked(Presentation const& p, Relation rel) {
    Presentation q = p;
    q.relations.push_back(std::move(rel));
    q.validate();
    return q;
  }

  Presentation delete_relation_unchecked(Presentation const& p, std::size_t index) {
    if (index >= p.relations.size()) {
      throw Error("delete_relation: index " + std::to_string(index)
                  + " out of range");
    }
    Presentation q = p;
    q.relations.erase(q.relations.begin() + static_cast<std::ptrdiff_t>(index));
    return q;
  }

  ////////////////////////////////////////////////////////////////////////
  // Explicit forms
  ////////////////////////////////////////////////////////////////////////

  FormsSet forms_w1(Presentation const& p, std::size_t n) {
    int const N = static_cast<int>(n);
    int const K = static_cast<int>(half_floor(n));
    auto const x = Word{p.letter("x")};
    auto const y = Word{p.letter("y")};
    FormsSet result;
    for (int r = 0; r <= N - 1; ++r) {
      for (int i = 1; i <= K; ++i) {
        for (int s = 0; s <= N - 1; ++s) {
          if (s + 1 <= i && i <= N - r - 1) {
            result.words.push_back(pw(y, r) * Word{p.letter("x_" + std::to_string(i))}
                                   * pw(x, s));
          }
        }
      }
    }
    return result;
  }

  FormsSet forms_w2(Presentation const& p, std::size_t n) {
    int const N = static_cast<int>(n);
    int const K = static_cast<int>(half_floor(n));
    auto const x = Word{p.letter("x")};
    auto const y = Word{p.letter("y")};
    FormsSet result;
    for (int r = 0; r <= N - 1; ++r) {
      for (int i = 1; i <= K; ++i) {
        for (int s = 0; s <= N - 1; ++s) {
          if (r + 1 <= i && i <= N - s - 1) {
            result.words.push_back(pw(y, r) * Word{p.letter("y_" + std::to_string(i))}
                                   * pw(x, s));
          }
        }
      }
    }
    return result;
  }

  std::int64_t w1_w2_size_formula(std::size_t n) {
    auto const N = static_cast<std::int64_t>(n);
    // (n+1)n(n-1)/6 - (1+(-1)^n)n^2/8
    std::int64_t v = (N + 1) * N * (N - 1) / 6;
    if (n % 2 == 0) {
      v -= N * N / 4;
    }
    return v;
  }

  FormsSet forms_w1_prime(Presentation const& p, std::size_t n) {
    Presentation q = p;
    Builder      b(q, n);
    int const    N  = b.N;
    auto const   x  = b.x();
    auto const   y  = b.y();
    auto const   u0 = b.es(2, N - 1) * x * y;
    FormsSet     result;
    result.words.push_back(y * x * u0);
    for (int i = 1; i <= N - 1; ++i) {
      for (int j = 1; j <= N - 1; ++j) {
        result.words.push_back(b.es(i + 1, N - 1) * x * pw(y, i) * u0 * pw(x, j - 1)
                               * b.es(j + 1, N - 1) * x * y);
      }
    }
    for (int i = 1; i <= N - 1; ++i) {
      result.words.push_back(b.es(i + 1, N - 1) * x * pw(y, i) * u0 * pw(x, N - 1));
    }
    for (int j = 1; j <= N - 1; ++j) {
      result.words.push_back(pw(y, N - 1) * u0 * pw(x, j - 1) * b.es(j + 1, N - 1)
                             * x * y);
    }
    result.words.push_back(pw(y, N - 1) * u0 * pw(x, N - 1));
    return result;
  }

  FormsSet forms_g_xi_g(Presentation const& p, std::size_t n) {
    int const  N = static_cast<int>(n);
    int const  K = static_cast<int>(half_floor(n));
    auto const g = Word{p.letter("g")};
    FormsSet   result;
    for (int r = 0; r <= N - 1; ++r) {
      for (int i = 1; i <= K; ++i) {
        for (int s = 0; s <= N - 1; ++s) {
          result.words.push_back(pw(g, r) * Word{p.letter("x_" + std::to_string(i))}
                                 * pw(g, s));
        }
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  nlohmann::ordered_json to_json(Presentation const& p) {
    using json = nlohmann::ordered_json;
    auto names = [&p](Word const& w) {
      json arr = json::array();
      for (auto l : w) {
        arr.push_back(p.letters.at(l));
      }
      return arr;
    };
    json j;
    j["label"]     = p.label;
    j["letters"]   = p.letters;
    j["relations"] = json::array();
    for (auto const& r : p.relations) {
      json jr;
      jr["lhs"] = names(r.lhs);
      jr["rhs"] = names(r.rhs);
      jr["tag"] = r.tag;
      j["relations"].push_back(std::move(jr));
    }
    return j;
  }

  Presentation presentation_from_json(nlohmann::ordered_json const& j) {
    Presentation p;
    try {
      p.label   = j.value("label", std::string{});
      p.letters = j.at("letters").get<std::vector<std::string>>();
      for (std::size_t a = 0; a < p.letters.size(); ++a) {
        for (std::size_t b = a + 1; b < p.letters.size(); ++b) {
          if (p.letters[a] == p.letters[b]) {
            throw Error("presentation JSON: duplicate letter \"" + p.letters[a]
                        + "\"");
          }
        }
      }
      for (auto const& jr : j.at("relations")) {
        Relation r;
        for (auto const& name : jr.at("lhs")) {
          r.lhs.letters.push_back(p.letter(name.get<std::string>()));
        }
        for (auto const& name : jr.at("rhs")) {
          r.rhs.letters.push_back(p.letter(name.get<std::string>()));
        }
        r.tag = jr.value("tag", std::string{});
        p.relations.push_back(std::move(r));
      }
    } catch (nlohmann::json::exception const& e) {
      throw Error(std::string("presentation JSON: ") + e.what());
    }
    return p;
  }

}  // namespace dimon
