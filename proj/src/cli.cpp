#include "dimon/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "dimon/congruence.hpp"
#include "dimon/error.hpp"
#include "dimon/monoid.hpp"
#include "dimon/presentation.hpp"
#include "json.hpp"

namespace dimon::cli {

  namespace {

    using json = nlohmann::ordered_json;

    constexpr int exit_pass          = 0;
    constexpr int exit_fail          = 1;
    constexpr int exit_usage         = 2;
    constexpr int exit_indeterminate = 3;

    constexpr RelationFamily all_relation_families[] = {
        RelationFamily::R,
        RelationFamily::V,
        RelationFamily::Vbar,
        RelationFamily::VbarPrime,
        RelationFamily::Q,
        RelationFamily::QPrime,
        RelationFamily::U,
        RelationFamily::Q0,
    };

    struct Options {
      bool        json_output = false;
      std::string family;
      std::size_t n = 4;
      std::string out_path;
      std::string dot_path;
      std::string presentation_path;
      std::size_t max_classes = 0;  // 0: default or DIMON_MAX_CLASSES
      std::uint64_t max_steps = 0;
      bool        table = false;
      bool        list  = false;
      std::string chain;
      std::string n_range = "4..10";
    };

    EnumerationCaps caps_from(Options const& o) {
      EnumerationCaps caps;
      if (char const* env = std::getenv("DIMON_MAX_CLASSES")) {
        std::string_view s(env);
        std::size_t      v = 0;
        auto [ptr, ec]     = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) {
          throw Error("DIMON_MAX_CLASSES must be a positive integer, got \""
                      + std::string(s) + "\"");
        }
        caps.max_classes = v;
      }
      if (o.max_classes != 0) {
        caps.max_classes = o.max_classes;
      }
      if (o.max_steps != 0) {
        caps.max_steps = o.max_steps;
      }
      return caps;
    }

    RelationFamily relation_family(std::string const& s) {
      if (auto f = parse_relation_family(s)) {
        return *f;
      }
      throw Error("unknown relation family \"" + s
                  + "\" (expected R, U, V, Vbar, VbarPrime, Q, Q0, QPrime)");
    }

    MonoidFamily monoid_family(std::string const& s) {
      if (auto f = parse_monoid_family(s)) {
        return *f;
      }
      throw Error("unknown monoid family \"" + s
                  + "\" (expected di, odi, mdi, opdi, ci, oci, dihedral, cyclic)");
    }

    int exit_for(VerdictStatus v) {
      switch (v) {
        case VerdictStatus::pass:
          return exit_pass;
        case VerdictStatus::fail:
          return exit_fail;
        case VerdictStatus::indeterminate:
          return exit_indeterminate;
      }
      return exit_fail;
    }

    std::string monoid_label(MonoidFamily f, std::size_t n) {
      return std::string(name(f)) + "_" + std::to_string(n);
    }

    void write_file(std::string const& path, std::string const& text) {
      std::ofstream f(path);
      if (!f) {
        throw Error("cannot write " + path);
      }
      f << text;
    }

    ////////////////////////////////////////////////////////////////////////
    // Verbs
    ////////////////////////////////////////////////////////////////////////

    int cmd_build(Options const& o, std::ostream& out) {
      auto family = monoid_family(o.family);
      auto m      = build_named(family, o.n);
      std::optional<std::uint64_t> formula;
      try {
        formula = cardinality_formula(family, o.n);
      } catch (Error const&) {
      }
      bool ok = !formula || *formula == m.size();
      if (!o.out_path.empty()) {
        write_file(o.out_path, to_json(m).dump(2) + "\n");
      }
      if (!o.dot_path.empty()) {
        write_file(o.dot_path, to_dot(m));
      }
      if (o.json_output) {
        json j;
        j["command"]    = "build";
        j["family"]     = name(family);
        j["n"]          = o.n;
        j["size"]       = m.size();
        j["generators"] = m.number_of_generators();
        j["formula"]    = formula ? json(*formula) : json(nullptr);
        j["verdict"]    = ok ? "PASS" : "FAIL";
        out << j.dump(2) << "\n";
      } else {
        out << monoid_label(family, o.n) << ": " << m.size() << " elements, "
            << m.number_of_generators() << " generators";
        if (formula) {
          out << "; formula " << *formula << (ok ? " (match)" : " (MISMATCH)");
        }
        out << "\n";
      }
      return ok ? exit_pass : exit_fail;
    }

    int cmd_verify_presentation(Options const& o, std::ostream& out) {
      auto family = relation_family(o.family);
      auto p      = build_relations(family, o.n);
      auto target = target_monoid(family);
      auto m      = build_named(target, o.n);
      auto v      = verify_presentation(p, assignment_for(p, o.n), m, caps_from(o));
      if (o.json_output) {
        json j;
        j["command"]        = "verify-presentation";
        j["presentation"]   = p.label;
        j["monoid"]         = monoid_label(target, o.n);
        j["letters"]        = p.alphabet_size();
        j["relations"]      = p.relations.size();
        j["relations_hold"] = v.relations_hold;
        j["classes"]        = v.class_count;
        j["monoid_size"]    = v.monoid_size;
        j["verdict"]        = name(v.status);
        out << j.dump(2) << "\n";
      } else {
        out << p.label << " vs " << monoid_label(target, o.n) << ": "
            << name(v.status) << " (" << v.detail << ")\n";
        for (auto i : v.failing_relations) {
          out << "  fails: " << p.to_string(p.relations[i]) << "\n";
        }
      }
      return exit_for(v.status);
    }

    int cmd_enumerate(Options const& o, std::ostream& out) {
      if (o.presentation_path.empty()) {
        throw Error("enumerate: --presentation is required");
      }
      std::ifstream f(o.presentation_path);
      if (!f) {
        throw Error("cannot read " + o.presentation_path);
      }
      json pj;
      try {
        pj = json::parse(f);
      } catch (json::exception const& e) {
        throw Error(o.presentation_path + ": " + e.what());
      }
      auto p = presentation_from_json(pj);
      auto r = enumerate(p, caps_from(o));
      if (o.json_output) {
        auto j = to_json(r, o.table);
        out << j.dump(2) << "\n";
      } else if (r.complete()) {
        out << p.label << ": complete, " << r.class_count() << " classes\n";
        if (o.table) {
          for (std::size_t c = 0; c < r.class_count(); ++c) {
            out << "  " << c << ":";
            for (Letter a = 0; a < r.alphabet_size(); ++a) {
              out << ' ' << r.action(static_cast<EnumerationResult::class_type>(c), a);
            }
            out << "\n";
          }
        }
      } else {
        out << p.label << ": capped (max_classes " << r.caps().max_classes
            << ", max_steps " << r.caps().max_steps << ")\n";
      }
      return r.complete() ? exit_pass : exit_indeterminate;
    }

    int cmd_check_relations(Options const& o, std::ostream& out) {
      auto family = relation_family(o.family);
      auto p      = build_relations(family, o.n);
      auto report = check_relations_hold(p, assignment_for(p, o.n));
      if (!o.out_path.empty()) {
        write_file(o.out_path, to_json(p).dump(2) + "\n");
      }
      if (o.json_output) {
        json j;
        j["command"]      = "check-relations";
        j["presentation"] = p.label;
        j["relations"]    = p.relations.size();
        j["failing"]      = json::array();
        for (auto i : report.failing) {
          j["failing"].push_back(p.to_string(p.relations[i]));
        }
        j["verdict"] = report.all_hold ? "PASS" : "FAIL";
        out << j.dump(2) << "\n";
      } else {
        out << p.label << ": " << p.relations.size() << " relations, "
            << (report.all_hold ? "PASS" : "FAIL") << " ("
            << p.relations.size() - report.failing.size() << " hold)\n";
        for (auto i : report.failing) {
          out << "  fails: " << p.to_string(p.relations[i]) << "\n";
        }
      }
      return report.all_hold ? exit_pass : exit_fail;
    }

    int cmd_forms(Options const& o, std::ostream& out) {
      auto family = relation_family(o.family);
      auto caps   = caps_from(o);
      auto base   = enumerate(build_relations(forms_base_family(family), o.n), caps);
      if (!base.complete()) {
        out << "base enumeration capped: INDETERMINATE\n";
        return exit_indeterminate;
      }
      auto p     = build_relations(family, o.n);
      auto forms = build_forms(family, o.n, base);
      auto m     = build_named(target_monoid(family), o.n);
      auto v     = verify_forms_set(p, forms, assignment_for(p, o.n), m, caps);
      if (o.json_output) {
        json j;
        j["command"]      = "forms";
        j["presentation"] = p.label;
        j["forms"]        = v.forms;
        j["classes"]      = v.classes;
        j["monoid_size"]  = v.monoid_size;
        j["verdict"]      = name(v.status);
        if (o.list) {
          j["words"] = json::array();
          for (auto const& w : forms.words) {
            j["words"].push_back(p.to_string(w));
          }
        }
        out << j.dump(2) << "\n";
      } else {
        out << p.label << " forms: " << name(v.status) << " (" << v.detail << ")\n";
        if (o.list) {
          for (auto const& w : forms.words) {
            out << "  " << p.to_string(w) << "\n";
          }
        }
      }
      return exit_for(v.status);
    }

    int cmd_tietze(Options const& o, std::ostream& out) {
      TietzeChain chain;
      if (o.chain == "odi") {
        chain = TietzeChain::odi;
      } else if (o.chain == "opdi") {
        chain = TietzeChain::opdi;
      } else {
        throw Error("tietze: --chain must be odi or opdi");
      }
      auto caps  = caps_from(o);
      auto steps = run_tietze_chain(chain, o.n, caps);
      auto first = enumerate(steps.front(), caps);
      auto last  = enumerate(steps.back(), caps);
      VerdictStatus status = VerdictStatus::pass;
      if (!first.complete() || !last.complete()) {
        status = VerdictStatus::indeterminate;
      } else if (first.class_count() != last.class_count()) {
        status = VerdictStatus::fail;
      }
      if (o.json_output) {
        json j;
        j["command"] = "tietze";
        j["chain"]   = o.chain;
        j["n"]       = o.n;
        j["steps"]   = json::array();
        for (auto const& p : steps) {
          j["steps"].push_back({{"label", p.label},
                                {"letters", p.alphabet_size()},
                                {"relations", p.relations.size()}});
        }
        j["original"] = to_json(first);
        j["final"]    = to_json(last);
        j["verdict"]  = name(status);
        out << j.dump(2) << "\n";
      } else {
        for (auto const& p : steps) {
          out << "  " << p.label << ": " << p.alphabet_size() << " letters, "
              << p.relations.size() << " relations\n";
        }
        out << "classes: " << (first.complete() ? std::to_string(first.class_count()) : "capped")
            << " -> " << (last.complete() ? std::to_string(last.class_count()) : "capped")
            << ": " << name(status) << "\n";
      }
      return exit_for(status);
    }

    int cmd_green(Options const& o, std::ostream& out) {
      auto family = monoid_family(o.family);
      auto m      = build_named(family, o.n);
      auto g      = green_classes(m);
      auto units  = group_of_units(m, g);
      if (o.json_output) {
        json j;
        j["command"] = "green";
        j["monoid"]  = monoid_label(family, o.n);
        j["size"]    = m.size();
        j["R"]       = g.num_r;
        j["L"]       = g.num_l;
        j["H"]       = g.num_h;
        j["J"]       = g.num_j;
        j["units"]   = units.size();
        out << j.dump(2) << "\n";
      } else {
        out << monoid_label(family, o.n) << ": " << m.size() << " elements; R "
            << g.num_r << ", L " << g.num_l << ", H " << g.num_h << ", D=J "
            << g.num_j << "; group of units " << units.size() << "\n";
      }
      return exit_pass;
    }

    std::pair<std::size_t, std::size_t> parse_range(std::string const& s) {
      auto pos = s.find("..");
      std::size_t lo = 0, hi = 0;
      auto parse = [&s](std::string_view t, std::size_t& v) {
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size()) {
          throw Error("bad --n-range \"" + s + "\" (expected a..b)");
        }
      };
      if (pos == std::string::npos) {
        parse(s, lo);
        hi = lo;
      } else {
        parse(std::string_view(s).substr(0, pos), lo);
        parse(std::string_view(s).substr(pos + 2), hi);
      }
      if (lo < 4 || hi < lo) {
        throw Error("bad --n-range \"" + s + "\": need 4 <= a <= b");
      }
      return {lo, hi};
    }

    int cmd_formulas(Options const& o, std::ostream& out) {
      auto [lo, hi] = parse_range(o.n_range);
      bool ok       = true;
      json rows     = json::array();
      if (!o.json_output) {
        out << std::left << std::setw(4) << "n";
        for (auto f : all_relation_families) {
          out << std::setw(14) << ("|" + std::string(name(f)) + "|");
        }
        out << std::setw(10) << "|W1+W2|" << "\n";
      }
      for (std::size_t n = lo; n <= hi; ++n) {
        json row;
        row["n"] = n;
        if (!o.json_output) {
          out << std::setw(4) << n;
        }
        for (auto f : all_relation_families) {
          auto p        = build_relations(f, n);
          auto formula  = relation_count_formula(f, n);
          auto built    = static_cast<std::int64_t>(p.relations.size());
          auto alpha_ok = static_cast<std::int64_t>(p.alphabet_size())
                          == alphabet_size_formula(f, n);
          bool match = built == formula && alpha_ok;
          ok         = ok && match;
          row[std::string(name(f))] = {{"formula", formula},
                                       {"built", built},
                                       {"alphabet", p.alphabet_size()},
                                       {"match", match}};
          if (!o.json_output) {
            std::string cell = std::to_string(formula);
            if (!match) {
              cell += "!=" + std::to_string(built);
            }
            out << std::setw(14) << cell;
          }
        }
        Presentation r = build_relations(RelationFamily::R, n);
        auto w12       = forms_w1(r, n).size() + forms_w2(r, n).size();
        auto w12f      = w1_w2_size_formula(n);
        bool w_match   = static_cast<std::int64_t>(w12) == w12f;
        ok             = ok && w_match;
        row["W1+W2"]   = {{"formula", w12f}, {"built", w12}, {"match", w_match}};
        if (!o.json_output) {
          std::string cell = std::to_string(w12f);
          if (!w_match) {
            cell += "!=" + std::to_string(w12);
          }
          out << std::setw(10) << cell << "\n";
        }
        rows.push_back(std::move(row));
      }
      if (o.json_output) {
        json j;
        j["command"] = "formulas";
        j["rows"]    = std::move(rows);
        j["verdict"] = ok ? "PASS" : "FAIL";
        out << j.dump(2) << "\n";
      } else {
        out << (ok ? "PASS" : "FAIL: entries a!=b show formula != built") << "\n";
      }
      return ok ? exit_pass : exit_fail;
    }

  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    Options  o;
    CLI::App app{"Dihedral inverse monoid presentation workbench", "dimon"};
    app.require_subcommand(1);
    app.add_flag("--json", o.json_output, "Machine-readable JSON report");

    auto add_caps = [&o](CLI::App* sub) {
      sub->add_option("--max-classes", o.max_classes,
                      "Class cap for enumeration (overrides DIMON_MAX_CLASSES)");
      sub->add_option("--max-steps", o.max_steps, "Step cap for enumeration");
    };
    auto add_json = [&o](CLI::App* sub) {
      sub->add_flag("--json", o.json_output, "Machine-readable JSON report");
    };

    auto* build = app.add_subcommand("build", "Close a named monoid and report its size");
    build->add_option("--family", o.family, "di, odi, mdi, opdi, ci, oci, dihedral, cyclic")
        ->required();
    build->add_option("--n", o.n, "Degree")->required();
    build->add_option("--out", o.out_path, "Write the monoid as JSON");
    build->add_option("--dot", o.dot_path, "Write the right Cayley graph as DOT");
    add_json(build);

    auto* verify = app.add_subcommand("verify-presentation",
                                      "Relations hold and class count equals |M|");
    verify->add_option("--family", o.family, "R, U, V, Vbar, VbarPrime, Q, Q0, QPrime")
        ->required();
    verify->add_option("--n", o.n, "Degree")->required();
    add_caps(verify);
    add_json(verify);

    auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate a presentation file");
    enumerate_cmd->add_option("--presentation", o.presentation_path, "Presentation JSON")
        ->required();
    enumerate_cmd->add_flag("--table", o.table, "Dump the class table");
    add_caps(enumerate_cmd);
    add_json(enumerate_cmd);

    auto* check = app.add_subcommand("check-relations",
                                     "Evaluate every relation under the named assignment");
    check->add_option("--family", o.family, "Relation family")->required();
    check->add_option("--n", o.n, "Degree")->required();
    check->add_option("--out", o.out_path, "Write the presentation as JSON");
    add_json(check);

    auto* forms = app.add_subcommand("forms", "Build and verify a set of forms");
    forms->add_option("--family", o.family, "R, Vbar or Q")->required();
    forms->add_option("--n", o.n, "Degree")->required();
    forms->add_flag("--list", o.list, "Print the words");
    add_caps(forms);
    add_json(forms);

    auto* tietze = app.add_subcommand("tietze", "Replay an elimination chain");
    tietze->add_option("--chain", o.chain, "odi or opdi")->required();
    tietze->add_option("--n", o.n, "Degree")->required();
    add_caps(tietze);
    add_json(tietze);

    auto* green = app.add_subcommand("green", "Green's class counts of a named monoid");
    green->add_option("--family", o.family, "Monoid family")->required();
    green->add_option("--n", o.n, "Degree")->required();
    add_json(green);

    auto* formulas = app.add_subcommand("formulas", "Closed-form count cross-checks");
    formulas->add_option("--n-range", o.n_range, "a..b (default 4..10)");
    add_json(formulas);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return exit_pass;
    } catch (CLI::CallForAllHelp const&) {
      out << app.help("", CLI::AppFormatMode::All);
      return exit_pass;
    } catch (CLI::ParseError const& e) {
      err << "dimon: " << e.what() << "\n";
      return exit_usage;
    }

    try {
      if (build->parsed()) {
        return cmd_build(o, out);
      } else if (verify->parsed()) {
        return cmd_verify_presentation(o, out);
      } else if (enumerate_cmd->parsed()) {
        return cmd_enumerate(o, out);
      } else if (check->parsed()) {
        return cmd_check_relations(o, out);
      } else if (forms->parsed()) {
        return cmd_forms(o, out);
      } else if (tietze->parsed()) {
        return cmd_tietze(o, out);
      } else if (green->parsed()) {
        return cmd_green(o, out);
      } else if (formulas->parsed()) {
        return cmd_formulas(o, out);
      }
    } catch (CappedError const& e) {
      err << "dimon: " << e.what() << "\n";
      return exit_indeterminate;
    } catch (Error const& e) {
      err << "dimon: " << e.what() << "\n";
      return exit_usage;
    }
    return exit_usage;
  }

}  // namespace dimon::cli
