#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "dimon/error.hpp"
#include "dimon/presentation.hpp"
#include "oracle.hpp"

using namespace dimon;

namespace {
  constexpr RelationFamily families[] = {
      RelationFamily::R,    RelationFamily::U,         RelationFamily::V,
      RelationFamily::Vbar, RelationFamily::VbarPrime, RelationFamily::Q,
      RelationFamily::Q0,   RelationFamily::QPrime,
  };

  std::string group_of(std::string const& tag) {
    return tag.substr(0, tag.find('['));
  }

  std::map<std::string, long> group_sizes(Presentation const& p) {
    std::map<std::string, long> m;
    for (auto const& r : p.relations) {
      ++m[group_of(r.tag)];
    }
    return m;
  }

  long count_except(long lo, long hi, long skip) {
    long c = 0;
    for (long j = lo; j <= hi; ++j) {
      c += j != skip;
    }
    return c;
  }
}  // namespace

TEST_CASE("alphabets") {
  CHECK(build_alphabet(RelationFamily::R, 4)
        == std::vector<std::string>{"x", "y", "e_1", "e_2", "e_3", "e_4", "x_1", "y_1"});
  CHECK(build_alphabet(RelationFamily::QPrime, 4)
        == std::vector<std::string>{"g", "e_1", "x_1"});
  CHECK(build_alphabet(RelationFamily::VbarPrime, 5)
        == std::vector<std::string>{"h", "x", "e_2", "e_3", "x_1", "x_2", "y_1", "y_2"});
  CHECK(build_alphabet(RelationFamily::V, 5)
        == std::vector<std::string>{"x", "y", "e_2", "e_3", "e_4", "x_1", "x_2", "y_1", "y_2"});
  CHECK_THROWS_AS((void)build_alphabet(RelationFamily::R, 3), Error);
  for (auto f : families) {
    for (std::size_t n = 4; n <= 12; ++n) {
      auto a = build_alphabet(f, n);
      CHECK(static_cast<std::int64_t>(a.size()) == alphabet_size_formula(f, n));
      CHECK(std::set<std::string>(a.begin(), a.end()).size() == a.size());
    }
  }
}

TEST_CASE("relation counts at n = 4") {
  CHECK(build_relations(RelationFamily::R, 4).relations.size() == 36);
  CHECK(build_relations(RelationFamily::Q, 4).relations.size() == 25);
  CHECK(build_relations(RelationFamily::V, 4).relations.size() == 32);
  CHECK(build_relations(RelationFamily::Vbar, 4).relations.size() == 38);
  CHECK(build_relations(RelationFamily::QPrime, 4).relations.size() == 18);
  CHECK(build_relations(RelationFamily::U, 4).relations.size() == 18);
  CHECK(build_relations(RelationFamily::Q0, 4).relations.size() == 16);
  CHECK(relation_count_formula(RelationFamily::VbarPrime, 4) == 35);
  CHECK_THROWS_AS((void)build_relations(RelationFamily::Q, 3), Error);
}

TEST_CASE("relation counts match the closed forms, 4 <= n <= 12") {
  for (auto f : families) {
    if (f == RelationFamily::VbarPrime) {
      continue;  // see the next test case
    }
    for (std::size_t n = 4; n <= 12; ++n) {
      CAPTURE(name(f));
      CAPTURE(n);
      CHECK(static_cast<std::int64_t>(build_relations(f, n).relations.size())
            == relation_count_formula(f, n));
    }
  }
}

TEST_CASE("VbarPrime group sizes follow the printed index ranges") {
  for (long n = 4; n <= 12; ++n) {
    long K = (n - 1) / 2, P = (n + 1) / 2, H = n / 2;
    auto sizes = group_sizes(build_relations(RelationFamily::VbarPrime, n));
    long v10 = 2 * K * (P - 1), v11 = 2 * K * (H - 1);
    for (long i = 1; i <= K; ++i) {
      v10 += 2 * count_except(2, H, i);
      v11 += 2 * count_except(2, P, i + 1);
    }
    std::map<std::string, long> expect{
        {"V'_1", P - 1},
        {"V'_2", 1},
        {"V'_3", 1},
        {"V'_4", (P - 1) * (P - 2) / 2 + (P - 1) * (H - 1)},
        {"V'_5", 2 * (P - 1)},
        {"V'_6", std::max(K - 1, 0L) + 1 + std::max((n - 2) / 2 - 1, 0L)},
        {"V'_7", 2},
        {"V'_8", 1},
        {"V'_9", 2 * K},
        {"V'_10", v10},
        {"V'_11", v11},
        {"V'_12", 4 * (K - 1) + 2},
        {"V'_13", 2 + 2 * (K - 1) + 2 * K},
        {"V'_14", 4 * K},
        {"Vbar'_0", 1},
        {"Vbar'_1", (n % 2) + 2 * K},
        {"Vbar'_2", 1},
    };
    CAPTURE(n);
    CHECK(sizes == expect);
  }
}

TEST_CASE("relation lists are well formed and tagged") {
  for (auto f : families) {
    for (std::size_t n = 4; n <= 8; ++n) {
      auto p = build_relations(f, n);
      CHECK_NOTHROW(p.validate());
      for (auto const& r : p.relations) {
        CHECK_FALSE(r.tag.empty());
      }
    }
  }
  // j = n - i + 1 is excluded from R_7
  auto r = build_relations(RelationFamily::R, 6);
  std::set<std::string> tags;
  for (auto const& rel : r.relations) {
    tags.insert(rel.tag);
  }
  CHECK(tags.count("R_7[i=2,j=6]") == 1);
  CHECK(tags.count("R_7[i=2,j=5]") == 0);
}

TEST_CASE("assignments and evaluation") {
  auto r = build_relations(RelationFamily::R, 4);
  auto a = build_assignment(RelationFamily::R, 4);
  CHECK(a.images[r.letter("x")] == PartialPerm::from_pairs(4, std::vector<std::pair<Point, Point>>{{1, 2}, {2, 3}, {3, 4}}));
  CHECK(evaluate(r.word("x y"), a) == gen_e(4, 4));
  CHECK(evaluate(Word{}, a) == PartialPerm::identity(4));

  auto q  = build_relations(RelationFamily::Q, 4);
  auto aq = build_assignment(RelationFamily::Q, 4);
  CHECK(aq.images[q.letter("g")] == PartialPerm(4, {2, 3, 4, 1}));
  CHECK(evaluate(q.word("g g g g"), aq) == PartialPerm::identity(4));
  CHECK(evaluate(Word{}, aq) == PartialPerm::identity(4));
}

TEST_CASE("relations hold under the assignments, 4 <= n <= 8") {
  for (auto f : families) {
    for (std::size_t n = 4; n <= 8; ++n) {
      auto p      = build_relations(f, n);
      auto report = check_relations_hold(p, build_assignment(f, n));
      CAPTURE(p.label);
      CHECK(report.all_hold);
      for (auto i : report.failing) {
        MESSAGE(p.to_string(p.relations[i]));
      }
    }
  }
}

TEST_CASE("check_relations_hold reports failures") {
  Presentation p;
  p.letters = {"a"};
  p.relations.push_back({Word{0, 0}, Word{}, "a^2=1"});
  Assignment a{4, {gen_e(4, 1)}};
  auto report = check_relations_hold(p, a);
  CHECK_FALSE(report.all_hold);
  CHECK(report.failing == std::vector<std::size_t>{0});
}

TEST_CASE("evaluate is a homomorphism") {
  std::mt19937_64 rng(11);
  for (auto f : families) {
    auto p = build_relations(f, 5);
    auto a = build_assignment(f, 5);
    std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(p.alphabet_size() - 1));
    std::uniform_int_distribution<int>    len(0, 12);
    for (int t = 0; t < 300; ++t) {
      Word u, v;
      for (int k = len(rng); k > 0; --k) {
        u.letters.push_back(letter(rng));
      }
      for (int k = len(rng); k > 0; --k) {
        v.letters.push_back(letter(rng));
      }
      REQUIRE(evaluate(u * v, a) == compose(evaluate(u, a), evaluate(v, a)));
    }
  }
}

TEST_CASE("extension construction reproduces Vbar") {
  for (std::size_t n = 4; n <= 8; ++n) {
    auto v    = build_relations(RelationFamily::V, n);
    auto ext  = extended_alphabet_presentation(v, "h");
    auto vbar = build_relations(RelationFamily::Vbar, n);
    REQUIRE(ext.letters == vbar.letters);

    // conjugation relations and the u_0 relation, written out over the
    // extended alphabet from their printed forms
    auto N = static_cast<int>(n);
    auto e = [&](int i) { return ext.word("e_" + std::to_string(i)); };
    auto x = ext.word("x"), y = ext.word("y"), h = ext.word("h");
    std::vector<Relation> conj{{h * x, y * h, ""}};
    for (int i = 2; i <= (N + 1) / 2; ++i) {
      conj.push_back({h * e(i), e(N - i + 1) * h, ""});
    }
    for (int i = 1; i <= (N - 1) / 2; ++i) {
      auto xi = ext.word("x_" + std::to_string(i));
      auto yi = ext.word("y_" + std::to_string(i));
      conj.push_back({h * xi, pow(y, n - i - 1) * xi * pow(x, i - 1) * h, ""});
      conj.push_back({h * yi, pow(y, i - 1) * yi * pow(x, n - i - 1) * h, ""});
    }
    Word u0;
    for (int i = 2; i <= N - 1; ++i) {
      u0 *= e(i);
    }
    Relation u0_rel{u0 * x * y * h, pow(x, n - 1), ""};

    auto built = build_extension_presentation(v, "h", conj, u0_rel);
    CHECK(built.relations.size() == v.relations.size() + 1 + conj.size() + 1);
    CHECK(built.letters == vbar.letters);
    CHECK(built.relations == vbar.relations);
  }
}

TEST_CASE("extension construction edge cases") {
  Presentation trivial;
  trivial.label = "trivial";
  auto ext = extended_alphabet_presentation(trivial, "b");
  Relation u0{ext.word("b"), Word{}, ""};
  auto p = build_extension_presentation(trivial, "b", {}, u0);
  REQUIRE(p.relations.size() == 2);
  CHECK(p.relations[0] == Relation{Word{0, 0}, Word{}, ""});
  CHECK(p.relations[1] == u0);

  // shape violations
  CHECK_THROWS_AS((void)build_extension_presentation(trivial, "b", {}, {ext.word("b"), ext.word("b"), ""}),
                  Error);
  auto v  = build_relations(RelationFamily::V, 4);
  auto ev = extended_alphabet_presentation(v, "h");
  Relation good_u0{ev.word("e_2 e_3 x y h"), ev.word("x x x"), ""};
  CHECK_THROWS_AS((void)build_extension_presentation(v, "h", {{ev.word("x h"), ev.word("y h"), ""}}, good_u0),
                  Error);
  CHECK_THROWS_AS((void)build_extension_presentation(v, "h", {{ev.word("h x"), ev.word("h y"), ""}}, good_u0),
                  Error);
  CHECK_THROWS_AS((void)extended_alphabet_presentation(v, "x"), Error);
}

TEST_CASE("eliminate_generator") {
  Presentation p;
  p.letters = {"a", "b"};
  p.relations.push_back({p.word("b"), p.word("a a"), ""});
  auto q = eliminate_generator(p, "b", p.word("a a"));
  CHECK(q.letters == std::vector<std::string>{"a"});
  CHECK(q.relations.empty());
  CHECK_THROWS_AS((void)eliminate_generator(p, "b", p.word("a b")), Error);

  auto r  = build_relations(RelationFamily::R, 4);
  auto r1 = eliminate_generator(r, "e_4", r.word("x y"));
  CHECK_FALSE(r1.find_letter("e_4").has_value());
  CHECK(r1.relations.size() == r.relations.size() - 1);
  for (auto const& rel : r1.relations) {
    CHECK(rel.lhs != rel.rhs);
  }
}

TEST_CASE("unchecked add and delete") {
  auto p = build_relations(RelationFamily::U, 4);
  auto q = add_relation_unchecked(p, p.relations[0]);
  CHECK(q.relations.size() == p.relations.size() + 1);
  auto s = delete_relation_unchecked(q, q.relations.size() - 1);
  CHECK(s.relations == p.relations);
  CHECK_THROWS_AS((void)delete_relation_unchecked(p, p.relations.size()), Error);
}

TEST_CASE("W_1 and W_2") {
  for (std::size_t n = 4; n <= 10; ++n) {
    auto r = build_relations(RelationFamily::R, n);
    CHECK(static_cast<std::int64_t>(forms_w1(r, n).size() + forms_w2(r, n).size())
          == w1_w2_size_formula(n));
  }
  auto r4 = build_relations(RelationFamily::R, 4);
  CHECK(forms_w1(r4, 4).size() + forms_w2(r4, 4).size() == 6);

  // images: rank-2 elements of ODI_n restricting some h g^k and no g^k
  for (int n = 4; n <= 6; ++n) {
    auto r = build_relations(RelationFamily::R, n);
    auto a = build_assignment(RelationFamily::R, n);
    std::set<oracle::Map> images;
    std::size_t           words = 0;
    for (auto const& forms : {forms_w1(r, n), forms_w2(r, n)}) {
      for (auto const& w : forms.words) {
        images.insert(oracle::from_library(evaluate(w, a)));
        ++words;
      }
    }
    CHECK(images.size() == words);
    std::set<oracle::Map> expect;
    for (auto const& m : oracle::all_partial_perms(n)) {
      if (oracle::image_sequence(m).size() != 2 || !oracle::increasing(m)) {
        continue;
      }
      bool rot = false, refl = false;
      for (int k = 0; k < n; ++k) {
        rot  = rot || oracle::restricts(m, oracle::rotation(n, k));
        refl = refl || oracle::restricts(m, oracle::reflection(n, k));
      }
      if (refl && !rot) {
        expect.insert(m);
      }
    }
    CHECK(images == expect);
  }
}

TEST_CASE("W'_1") {
  for (int n = 4; n <= 7; ++n) {
    auto v = build_relations(RelationFamily::V, n);
    auto a = build_assignment(RelationFamily::V, n);
    auto w = forms_w1_prime(v, n);
    CHECK(w.size() == static_cast<std::size_t>(1 + n * n));
    std::set<oracle::Map> images;
    for (auto const& word : w.words) {
      auto m = oracle::from_library(evaluate(word, a));
      CHECK(oracle::image_sequence(m).size() <= 1);
      images.insert(m);
    }
    CHECK(images.size() == w.size());
  }
}

TEST_CASE("g^r x_i g^s words") {
  auto q = build_relations(RelationFamily::Q, 5);
  CHECK(forms_g_xi_g(q, 5).size() == 2 * 25);
  auto qp = build_relations(RelationFamily::QPrime, 4);
  CHECK(forms_g_xi_g(qp, 4).size() == 16);
}

TEST_CASE("words, names, translation") {
  auto p = build_relations(RelationFamily::R, 4);
  CHECK(p.word("") == Word{});
  CHECK(p.word("1") == Word{});
  CHECK(p.to_string(p.word("x y e_4")) == "x y e_4");
  CHECK(p.to_string(Word{}) == "1");
  CHECK_THROWS_AS((void)p.word("x z"), Error);
  auto u = build_relations(RelationFamily::U, 4);
  CHECK(u.to_string(translate(p.word("e_1 x"), p, u)) == "e_1 x");
  CHECK_THROWS_AS((void)translate(p.word("x_1"), p, u), Error);
  CHECK(Word{0} < Word{1});
  CHECK(Word{5} < Word{0, 0});
  CHECK(parse_relation_family("vbarprime") == RelationFamily::VbarPrime);
  CHECK(parse_relation_family("Q0") == RelationFamily::Q0);
  CHECK_FALSE(parse_relation_family("W").has_value());
}

TEST_CASE("presentation JSON") {
  auto p = build_relations(RelationFamily::R, 4);
  auto j = to_json(p);
  CHECK(j["label"] == "R(n=4)");
  CHECK(j["letters"][0] == "x");
  CHECK(j["relations"].size() == 36);
  bool has_r2 = false;
  for (auto const& r : j["relations"]) {
    has_r2 = has_r2
             || (r["lhs"] == nlohmann::ordered_json{"x", "y"}
                 && r["rhs"] == nlohmann::ordered_json{"e_4"} && r["tag"] == "R_2");
  }
  CHECK(has_r2);
  auto q = presentation_from_json(j);
  CHECK(q.label == p.label);
  CHECK(q.letters == p.letters);
  CHECK(q.relations == p.relations);
  CHECK(to_json(q).dump() == j.dump());
  CHECK_THROWS_AS((void)presentation_from_json(nlohmann::ordered_json::parse(
                      R"({"letters":["a"],"relations":[{"lhs":["b"],"rhs":[]}]})")),
                  Error);
  CHECK_THROWS_AS((void)presentation_from_json(nlohmann::ordered_json::parse(
                      R"({"letters":["a","a"],"relations":[]})")),
                  Error);
}
