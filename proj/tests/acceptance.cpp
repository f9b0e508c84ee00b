// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "dimon/congruence.hpp"
#include "dimon/error.hpp"
#include "dimon/monoid.hpp"
#include "dimon/presentation.hpp"
#include "oracle.hpp"

using namespace dimon;

namespace {

  constexpr RelationFamily all_families[] = {
      RelationFamily::R, RelationFamily::V, RelationFamily::Vbar, RelationFamily::VbarPrime,
      RelationFamily::Q, RelationFamily::QPrime, RelationFamily::U, RelationFamily::Q0};

  // Collects the first few failure messages of one criterion.
  struct Check {
    std::ostringstream log;
    int                failures = 0;

    void expect(bool ok, std::string const& what) {
      if (!ok) {
        if (++failures <= 5) {
          log << "    " << what << "\n";
        }
      }
    }
  };

  // Closed forms evaluated in floating point with an explicit (-1)^n.
  long long rounded(double v) {
    return std::llround(v);
  }
  bool integral(double v) {
    return std::fabs(v - std::round(v)) < 1e-9;
  }

  double count_formula(RelationFamily f, double n) {
    double s = std::pow(-1.0, n);
    switch (f) {
      case RelationFamily::R:
        return (5 * n * n - (1 + 2 * s) * n - s + 5) / 2;
      case RelationFamily::U:
        return (n * n + 3 * n + 8) / 2;
      case RelationFamily::V:
        return (5 * n * n - (1 + 2 * s) * n - s - 3) / 2;
      case RelationFamily::Vbar:
        return (5 * n * n + (2 - 2 * s) * n - (3 + 5 * s) / 2) / 2;
      case RelationFamily::VbarPrime:
        return 2 * n * n + (7 - s) * n / 4 - 2 * s - 1;
      case RelationFamily::Q:
        return (3 * n * n + (1 - s) * n + 3 - (1 + s) / 2) / 2;
      case RelationFamily::Q0:
        return (n * n + 3 * n + 4) / 2;
      case RelationFamily::QPrime:
        return (3 * n * n - (3 + s) * n + 5 - (1 + s) / 2) / 2;
    }
    return -1;
  }

  double odi_size(double n) {
    return 3 * std::pow(2.0, n) + (n + 1) * n * (n - 1) / 6 - (1 + std::pow(-1.0, n)) * n * n / 8
           - 2 * n - 2;
  }
  double mdi_size(double n) {
    return 3 * std::pow(2.0, n + 1) + (n + 1) * n * (n - 1) / 3
           - (5 + std::pow(-1.0, n)) * n * n / 4 - 4 * n - 5;
  }
  double oci_size(double n) {
    return 3 * std::pow(2.0, n) - 2 * n - 2;
  }
  double w1_w2_size(double n) {
    return (n + 1) * n * (n - 1) / 6 - (1 + std::pow(-1.0, n)) * n * n / 8;
  }

  std::size_t oracle_size(MonoidFamily family, int n) {
    std::vector<oracle::Map> gens;
    for (auto const& g : family_generators(family, static_cast<std::size_t>(n))) {
      gens.push_back(oracle::from_library(g));
    }
    return oracle::closure(n, gens).size();
  }

  bool oracle_member(MonoidFamily family, oracle::Map const& m) {
    switch (family) {
      case MonoidFamily::DI:
        return oracle::in_di(m);
      case MonoidFamily::ODI:
        return oracle::in_di(m) && oracle::increasing(m);
      case MonoidFamily::MDI:
        return oracle::in_di(m) && (oracle::increasing(m) || oracle::decreasing(m));
      case MonoidFamily::OPDI:
        return oracle::in_di(m) && oracle::cyclic(m);
      case MonoidFamily::CI:
        return oracle::in_ci(m);
      case MonoidFamily::OCI:
        return oracle::in_ci(m) && oracle::increasing(m);
      default:
        return false;
    }
  }

  std::string str(RelationFamily f) {
    return std::string(name(f));
  }

  void criterion1(Check& c) {
    for (std::size_t n = 4; n <= 8; ++n) {
      double N = static_cast<double>(n);
      auto   odi = build_named(MonoidFamily::ODI, n).size();
      auto   mdi = build_named(MonoidFamily::MDI, n).size();
      auto   oci = build_named(MonoidFamily::OCI, n).size();
      c.expect(static_cast<long long>(odi) == rounded(odi_size(N)),
               "|ODI_" + std::to_string(n) + "| = " + std::to_string(odi));
      c.expect(static_cast<long long>(mdi) == rounded(mdi_size(N)),
               "|MDI_" + std::to_string(n) + "| = " + std::to_string(mdi));
      c.expect(static_cast<long long>(oci) == rounded(oci_size(N)),
               "|OCI_" + std::to_string(n) + "| = " + std::to_string(oci));
    }
    c.expect(build_named(MonoidFamily::ODI, 4).size() == 44, "|ODI_4| != 44");
    c.expect(build_named(MonoidFamily::MDI, 4).size() == 71, "|MDI_4| != 71");
    c.expect(build_named(MonoidFamily::MDI, 5).size() == 182, "|MDI_5| != 182");
    c.expect(build_named(MonoidFamily::OCI, 4).size() == 38, "|OCI_4| != 38");
  }

  void criterion2(Check& c) {
    for (std::size_t n = 4; n <= 12; ++n) {
      for (auto f : all_families) {
        double expect = count_formula(f, static_cast<double>(n));
        auto   built  = build_relations(f, n).relations.size();
        c.expect(integral(expect) && static_cast<long long>(built) == rounded(expect),
                 str(f) + " n=" + std::to_string(n) + ": built " + std::to_string(built)
                     + ", formula " + std::to_string(expect));
      }
    }
    std::vector<std::size_t> row;
    for (auto f : all_families) {
      row.push_back(build_relations(f, 4).relations.size());
    }
    c.expect(row == std::vector<std::size_t>{36, 32, 38, 35, 25, 18, 18, 16},
             "n=4 row differs from 36/32/38/35/25/18/18/16");
  }

  void criterion3(Check& c) {
    for (std::size_t n = 4; n <= 8; ++n) {
      for (auto f : all_families) {
        auto p      = build_relations(f, n);
        auto report = check_relations_hold(p, build_assignment(f, n));
        c.expect(report.all_hold, str(f) + " n=" + std::to_string(n) + ": "
                                      + std::to_string(report.failing.size()) + " relations fail");
      }
    }
  }

  void criterion4(Check& c) {
    constexpr RelationFamily presented[] = {RelationFamily::R,    RelationFamily::V,
                                           RelationFamily::Vbar, RelationFamily::VbarPrime,
                                           RelationFamily::Q,    RelationFamily::QPrime};
    for (std::size_t n = 4; n <= 6; ++n) {
      auto N = static_cast<int>(n);
      for (auto f : presented) {
        auto target = target_monoid(f);
        auto m      = build_named(target, n);
        auto p      = build_relations(f, n);
        auto v      = verify_presentation(p, assignment_for(p, n), m);
        std::size_t expect = 0;
        if (target == MonoidFamily::ODI) {
          expect = static_cast<std::size_t>(rounded(odi_size(n)));
        } else if (target == MonoidFamily::MDI) {
          expect = static_cast<std::size_t>(rounded(mdi_size(n)));
        } else {
          expect = oracle_size(MonoidFamily::OPDI, N);
        }
        c.expect(v.status == VerdictStatus::pass && v.class_count == expect,
                 p.label + ": " + std::string(name(v.status)) + ", "
                     + std::to_string(v.class_count) + " classes, expected "
                     + std::to_string(expect));
      }
    }
    c.expect(oracle_size(MonoidFamily::OPDI, 5) == 206, "oracle |OPDI_5| != 206");
    c.expect(rounded(odi_size(6)) == 204, "|ODI_6| != 204");
  }

  void criterion5(Check& c) {
    for (std::size_t n = 4; n <= 5; ++n) {
      for (auto chain : {TietzeChain::odi, TietzeChain::opdi}) {
        auto steps  = run_tietze_chain(chain, n);
        auto first  = enumerate(steps.front());
        auto last   = enumerate(steps.back());
        c.expect(first.complete() && last.complete()
                     && first.class_count() == last.class_count(),
                 steps.back().label + ": " + std::to_string(last.class_count()) + " vs "
                     + std::to_string(first.class_count()));
      }
      auto odi = run_tietze_chain(TietzeChain::odi, n);
      c.expect(odi.back().letters == build_alphabet(RelationFamily::V, n),
               "ODI chain does not end on the alphabet of V");
      auto opdi = run_tietze_chain(TietzeChain::opdi, n);
      c.expect(opdi.back().letters == build_alphabet(RelationFamily::QPrime, n),
               "OPDI chain does not end on the alphabet of Q'");
    }
    for (std::size_t n = 4; n <= 8; ++n) {
      auto v   = build_relations(RelationFamily::V, n);
      auto ext = extended_alphabet_presentation(v, "h");
      auto N   = static_cast<int>(n);
      auto e   = [&](int i) { return ext.word("e_" + std::to_string(i)); };
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
      auto built = build_extension_presentation(v, "h", conj, {u0 * x * y * h, pow(x, n - 1), ""});
      auto vbar  = build_relations(RelationFamily::Vbar, n);
      c.expect(built.letters == vbar.letters && built.relations == vbar.relations,
               "extension differs from Vbar at n=" + std::to_string(n));
    }
  }

  void criterion6(Check& c) {
    struct Case {
      RelationFamily family;
      MonoidFamily   target;
    };
    for (std::size_t n = 4; n <= 5; ++n) {
      for (auto [family, target] : {Case{RelationFamily::R, MonoidFamily::ODI},
                                    Case{RelationFamily::Vbar, MonoidFamily::MDI},
                                    Case{RelationFamily::Q, MonoidFamily::OPDI}}) {
        auto base  = enumerate(build_relations(forms_base_family(family), n));
        auto forms = build_forms(family, n, base);
        auto p     = build_relations(family, n);
        auto v     = verify_forms_set(p, forms, assignment_for(p, n), build_named(target, n));
        c.expect(v.status == VerdictStatus::pass,
                 p.label + " forms: " + std::string(name(v.status)) + " " + v.detail);
      }
      // W' contains 1 and W'_1
      auto b     = build_relations(RelationFamily::V, n);
      auto vbar  = build_relations(RelationFamily::Vbar, n);
      auto forms = build_forms(RelationFamily::Vbar, n, enumerate(b));
      std::set<Word> all(forms.words.begin(), forms.words.end());
      bool           contains = all.count(Word{}) == 1;
      for (auto const& w : forms_w1_prime(b, n).words) {
        contains = contains && all.count(translate(w, b, vbar)) == 1;
      }
      c.expect(contains, "W' misses 1 or part of W'_1 at n=" + std::to_string(n));
    }
    for (std::size_t n = 4; n <= 10; ++n) {
      auto r     = build_relations(RelationFamily::R, n);
      auto built = forms_w1(r, n).size() + forms_w2(r, n).size();
      c.expect(static_cast<long long>(built) == rounded(w1_w2_size(static_cast<double>(n))),
               "|W1+W2| at n=" + std::to_string(n) + " is " + std::to_string(built));
    }
  }

  void criterion7(Check& c) {
    for (std::size_t n = 4; n <= 5; ++n) {
      auto const N  = static_cast<int>(n);
      auto const ns = std::to_string(n);
      auto       u  = build_relations(RelationFamily::U, n);
      auto       ru = enumerate(u);
      auto       x = u.word("x"), y = u.word("y");
      for (int j = 1; j <= N; ++j) {
        for (int i = 1; i <= j; ++i) {
          auto ei = u.word("e_" + std::to_string(i));
          auto ej = u.word("e_" + std::to_string(N - i + 1));
          bool ok = is_consequence(ru, {pow(x, j) * ei, pow(x, j), ""})
                    && is_consequence(ru, {ej * pow(x, j), pow(x, j), ""})
                    && is_consequence(ru, {ei * pow(y, j), pow(y, j), ""})
                    && is_consequence(ru, {pow(y, j) * ej, pow(y, j), ""});
          c.expect(ok, "powers fail at n=" + ns + " i=" + std::to_string(i)
                           + " j=" + std::to_string(j));
        }
      }
      auto q  = build_relations(RelationFamily::Q, n);
      auto rq = enumerate(q);
      auto g  = q.word("g");
      auto e  = [&](int i) { return q.word("e_" + std::to_string(i)); };
      for (int i = 1; i <= N; ++i) {
        for (int m = 0; m < N; ++m) {
          int  right = i + m <= N ? i + m : i + m - N;
          int  left  = i - m >= 1 ? i - m : N + i - m;
          bool ok    = is_consequence(rq, {e(i) * pow(g, m), pow(g, m) * e(right), ""})
                    && is_consequence(rq, {pow(g, m) * e(i), e(left) * pow(g, m), ""});
          c.expect(ok, "shift law fails at n=" + ns + " i=" + std::to_string(i)
                           + " m=" + std::to_string(m));
        }
      }
      auto r  = build_relations(RelationFamily::R, n);
      auto rr = enumerate(r);
      Word full;
      for (int k = 2; k <= N; ++k) {
        full *= r.word("e_" + std::to_string(k));
      }
      for (int i = 1; i <= (N - 1) / 2; ++i) {
        for (int j = 1; j <= (N - 1) / 2; ++j) {
          auto xi = r.word("x_" + std::to_string(i)), xj = r.word("x_" + std::to_string(j));
          auto yi = r.word("y_" + std::to_string(i)), yj = r.word("y_" + std::to_string(j));
          bool ok = is_consequence(rr, {xi * xj, full, ""}) && is_consequence(rr, {yi * yj, full, ""});
          if (i != j) {
            ok = ok && is_consequence(rr, {xi * yj, full, ""})
                 && is_consequence(rr, {yj * xi, full, ""});
          }
          c.expect(ok, "x_i x_j products fail at n=" + ns);
        }
      }
      auto vbar = build_relations(RelationFamily::Vbar, n);
      c.expect(is_consequence(enumerate(vbar), {vbar.word("h y"), vbar.word("x h"), ""}),
               "hy = xh fails at n=" + ns);
    }
  }

  void criterion8(Check& c) {
    for (std::size_t n = 3; n <= 8; ++n) {
      for (std::size_t i = 1; i <= n; ++i) {
        c.expect(gen_e(n, i) == power(gen_g(n), n - i) * gen_e(n, n) * power(gen_g(n), i),
                 "e_i identity fails at n=" + std::to_string(n));
      }
      auto h = gen_h(n), x = gen_x(n), y = gen_y(n);
      c.expect(h * x * h == y, "hxh != y at n=" + std::to_string(n));
      for (std::size_t i = 1; i <= half_floor(n); ++i) {
        c.expect(h * gen_xi(n, i) * h == power(y, n - i - 1) * gen_xi(n, i) * power(x, i - 1)
                     && h * gen_yi(n, i) * h
                            == power(y, i - 1) * gen_yi(n, i) * power(x, n - i - 1),
                 "conjugation display fails at n=" + std::to_string(n));
      }
    }
    for (int n = 1; n <= 6; ++n) {
      for (auto family : {MonoidFamily::DI, MonoidFamily::ODI, MonoidFamily::MDI,
                          MonoidFamily::OPDI, MonoidFamily::CI, MonoidFamily::OCI}) {
        if (static_cast<std::size_t>(n) < minimum_degree(family)) {
          continue;
        }
        std::set<oracle::Map> built, expect;
        auto                  m = build_named(family, static_cast<std::size_t>(n));
        for (auto const& f : m.elements()) {
          built.insert(oracle::from_library(f));
        }
        for (auto const& m : oracle::all_partial_perms(n)) {
          if (oracle_member(family, m)) {
            expect.insert(m);
          }
        }
        c.expect(built == expect, std::string(name(family)) + "_" + std::to_string(n)
                                      + " is not the intersection");
      }
    }
    for (std::size_t n = 4; n <= 7; ++n) {
      for (auto family : {MonoidFamily::ODI, MonoidFamily::MDI, MonoidFamily::OPDI}) {
        auto gens = family_generators(family, n);
        auto m    = build_named(family, n);
        c.expect(gens.size() == rank_formula(family, n) && verify_generates(m, gens)
                     && m.size() == oracle_size(family, static_cast<int>(n)),
                 std::string(name(family)) + "_" + std::to_string(n) + " generating set");
      }
    }
  }

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"cardinality formulas, 4 <= n <= 8", criterion1},
      {"relation-count formulas, 4 <= n <= 12", criterion2},
      {"relation satisfaction, 4 <= n <= 8", criterion3},
      {"presentations verified, n = 4, 5, 6", criterion4},
      {"Tietze chains and extension construction", criterion5},
      {"forms sets", criterion6},
      {"consequence identities, n = 4, 5", criterion7},
      {"structural properties", criterion8},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    auto  start = std::chrono::steady_clock::now();
    try {
      criteria[k].second(c);
    } catch (std::exception const& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool   ok   = c.failures == 0;
    failed += ok ? 0 : 1;
    std::printf("%s criterion %zu: %s (%.2fs)\n", ok ? "PASS" : "FAIL", k + 1,
                criteria[k].first.c_str(), secs);
    if (!ok) {
      std::printf("%s", c.log.str().c_str());
      if (c.failures > 5) {
        std::printf("    ... %d failures in total\n", c.failures);
      }
    }
  }
  return failed == 0 ? 0 : 1;
}
