#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opart/chain.hpp"
#include "opart/enumeration.hpp"
#include "opart/qseries.hpp"
#include "opart/recurrence.hpp"
#include "opart/serialize.hpp"

namespace opart::cli {

enum ExitCode : int { kPass = 0, kMismatch = 1, kInvalidInput = 2 };

inline const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> c = {"lemma1", "lemma2", "eq357", "key", "rec", "tmj", "chain", "theorem"};
  return c;
}

struct RunConfig {
  std::string command;
  std::string side = "all";
  std::optional<std::int64_t> modulus;
  std::vector<std::int64_t> a;
  std::int64_t n_max = 40;
  std::int64_t trunc = 40;
  std::int64_t x_trunc = 6;
  std::optional<std::int64_t> ell_max;
  std::vector<std::string> checks;
  std::string output = "json";
  bool battery = false;
  std::string what = "product";
  std::int64_t m = 0;
};

inline std::vector<AlphaSystem> battery_systems() {
  return {build_system({1, 2}, 3), build_system({1, 2, 4}, 7), build_system({1, 3, 5}, 9),
          build_system({1, 2, 4, 8}, 15)};
}

inline std::int64_t default_ell_max(const AlphaSystem& sys, std::int64_t trunc) {
  const std::int64_t n = sys.modulus();
  return (trunc + sys.a(1) + n - 1) / n + 1;
}

// ---------------------------------------------------------------- formatting

inline std::string system_label(const AlphaSystem& sys) {
  std::string s = "N=" + std::to_string(sys.modulus()) + " a=";
  for (std::size_t i = 0; i < sys.generators().size(); ++i)
    s += (i ? "," : "") + std::to_string(sys.generators()[i]);
  return s;
}

inline void table_rows(std::ostream& out, const CountTable& t) {
  const std::size_t kmax = t.max_k();
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(kmax + 2, 1);
  std::vector<std::string> head{"n"};
  for (std::size_t k = 0; k <= kmax; ++k) head.push_back("k=" + std::to_string(k));
  cells.push_back(head);
  for (std::int64_t n = 0; n <= t.n_max(); ++n) {
    std::vector<std::string> row{std::to_string(n)};
    for (std::size_t k = 0; k <= kmax; ++k) row.push_back(to_string(t.entry(k, n)));
    cells.push_back(row);
  }
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << row[i];
    out << "\n";
  }
}

inline void csv_rows(std::ostream& out, const CountTable& t, std::size_t kmax, const std::string& side) {
  for (std::int64_t n = 0; n <= t.n_max(); ++n) {
    if (!side.empty()) out << side << ",";
    out << n;
    for (std::size_t k = 0; k <= kmax; ++k) out << "," << to_string(t.entry(k, n));
    out << "\n";
  }
}

inline void csv_header(std::ostream& out, std::size_t kmax, bool with_side) {
  if (with_side) out << "side,";
  out << "n";
  for (std::size_t k = 0; k <= kmax; ++k) out << ",k" << k;
  out << "\n";
}

// ---------------------------------------------------------------- count

inline int cmd_count(const RunConfig& cfg, const AlphaSystem& sys, std::ostream& out, std::ostream& err) {
  const bool want_f = cfg.side != "G";
  const bool want_g = cfg.side != "F";
  std::optional<CountTable> f, g;
  if (want_f) f = count_F(sys, cfg.n_max);
  if (want_g) g = count_G(sys, cfg.n_max);
  std::optional<std::pair<std::size_t, std::int64_t>> diff;
  if (f && g) diff = f->first_difference(*g);
  const bool both = f && g;

  if (cfg.output == "json") {
    Json j;
    if (!both) {
      j = f ? to_json(*f, sys, "F") : to_json(*g, sys, "G");
    } else {
      j = Json{{"F", to_json(*f, sys, "F")}, {"G", to_json(*g, sys, "G")}, {"verdict", diff ? "fail" : "pass"}};
      if (diff) j["first_difference"] = Json{{"k", diff->first}, {"n", diff->second}};
    }
    out << canonical(j) << "\n";
  } else if (cfg.output == "csv") {
    const std::size_t kmax = std::max(f ? f->max_k() : 0, g ? g->max_k() : 0);
    csv_header(out, kmax, both);
    if (f) csv_rows(out, *f, kmax, both ? "F" : "");
    if (g) csv_rows(out, *g, kmax, both ? "G" : "");
  } else {
    if (f) {
      out << "F " << system_label(sys) << "\n";
      table_rows(out, *f);
    }
    if (g) {
      if (f) out << "\n";
      out << "G " << system_label(sys) << "\n";
      table_rows(out, *g);
    }
    if (both) out << "\nverdict: " << (diff ? "fail" : "pass") << "\n";
  }
  if (diff) {
    err << "F and G differ at k=" << diff->first << " n=" << diff->second << "\n";
    return kMismatch;
  }
  return kPass;
}

// ---------------------------------------------------------------- expand

inline int cmd_expand(const RunConfig& cfg, const AlphaSystem& sys, std::ostream& out) {
  QLaurent s;
  if (cfg.what == "product")
    s = product_F(sys, cfg.trunc);
  else if (cfg.what == "limit")
    s = limit_u(sys, cfg.trunc);
  else
    s = g_series(sys, cfg.m, cfg.trunc);

  if (cfg.output == "json") {
    out << canonical(to_json(s)) << "\n";
    return kPass;
  }
  const Exp hi = s.is_exact() ? s.max_exp().value_or(0) : s.trunc();
  const Exp lo = std::min<Exp>(0, s.min_exp().value_or(0));
  if (cfg.output == "csv") {
    std::size_t kmax = 0;
    s.for_each_term([&](Exp, const DPoly& c) { kmax = std::max(kmax, c.size() - 1); });
    csv_header(out, kmax, false);
    for (Exp n = lo; n <= hi; ++n) {
      const DPoly c = s.coefficient(n);
      out << n;
      for (std::size_t k = 0; k <= kmax; ++k) out << "," << to_string(c[k]);
      out << "\n";
    }
    return kPass;
  }
  const int w = static_cast<int>(std::max(std::to_string(lo).size(), std::to_string(hi).size()));
  for (Exp n = lo; n <= hi; ++n) out << std::setw(w) << n << "  " << s.coefficient(n).to_string() << "\n";
  if (!s.is_exact()) out << "known up to q^" << s.trunc() << "\n";
  return kPass;
}

// ---------------------------------------------------------------- verify

struct CheckResult {
  std::string name;
  bool pass = true;
  bool skipped = false;
  std::size_t cases = 0;
  std::string detail;

  static CheckResult named(std::string n) {
    CheckResult c;
    c.name = std::move(n);
    return c;
  }
};

struct SystemReport {
  AlphaSystem system;
  std::vector<CheckResult> checks;
  std::optional<ChainReport> chain;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
};

namespace detail {

inline std::string first_term_text(const QLaurent& r) {
  const auto t = r.first_term();
  return "q^" + std::to_string(t->first) + " coefficient " + t->second.to_string();
}

template <typename Fn>
void record(CheckResult& c, bool ok, Fn&& describe) {
  ++c.cases;
  if (ok || !c.pass) {
    if (!ok) c.pass = false;
    return;
  }
  c.pass = false;
  c.detail = describe();
}

}  // namespace detail

inline SystemReport verify_system(const AlphaSystem& sys, const RunConfig& cfg) {
  const std::int64_t trunc = cfg.trunc;
  const std::int64_t ell_max = cfg.ell_max.value_or(default_ell_max(sys, trunc));
  const std::int64_t n = sys.modulus();
  const std::int64_t j_max = trunc / n + 2;
  const int r = sys.r();
  const auto selected = [&](const std::string& name) {
    return cfg.checks.empty() || std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
  };
  const GSideCounter counter(sys, trunc);
  SystemReport rep{sys, {}, std::nullopt};

  if (selected("lemma1")) {
    CheckResult c = CheckResult::named("lemma1");
    for (std::int64_t j = 1; j <= j_max; ++j)
      for (std::size_t m = 1; m <= sys.num_sums(); ++m) {
        const auto bad = lemma1_mismatch(counter, j, m);
        detail::record(c, !bad, [&] {
          return "j=" + std::to_string(j) + " m=" + std::to_string(m) + ": k=" + std::to_string(bad->first) +
                 " n=" + std::to_string(bad->second);
        });
      }
    rep.checks.push_back(c);
  }
  if (selected("lemma2")) {
    CheckResult c = CheckResult::named("lemma2");
    for (std::int64_t j = 1; j <= j_max; ++j)
      for (std::size_t m = 1; m <= sys.num_sums(); ++m) {
        const QLaurent res = verify_lemma2(counter, j, m);
        detail::record(c, res.is_zero(), [&] {
          return "j=" + std::to_string(j) + " m=" + std::to_string(m) + ": " + detail::first_term_text(res);
        });
      }
    rep.checks.push_back(c);
  }
  if (selected("eq357")) {
    CheckResult c = CheckResult::named("eq357");
    for (std::int64_t j = 1; j <= j_max; ++j)
      for (int k = 1; k <= r + 1; ++k) {
        const auto res = verify_eq_357(counter, j, k);
        detail::record(c, res.zero(), [&] {
          const bool first = !res.eq35.is_zero();
          return std::string(first ? "(3.5)" : "(3.7)") + " j=" + std::to_string(j) + " k=" + std::to_string(k) +
                 ": " + detail::first_term_text(first ? res.eq35 : *res.eq37);
        });
      }
    rep.checks.push_back(c);
  }
  if (selected("key")) {
    CheckResult c = CheckResult::named("key");
    for (std::int64_t ell = 1; ell <= ell_max; ++ell)
      for (int k = 1; k <= r + 1; ++k) {
        const QLaurent res = verify_key_lemma(counter, k, ell);
        detail::record(c, res.is_zero(), [&] {
          return "k=" + std::to_string(k) + " l=" + std::to_string(ell) + ": " + detail::first_term_text(res);
        });
      }
    rep.checks.push_back(c);
  }
  if (selected("rec")) {
    CheckResult c = CheckResult::named("rec");
    const auto u = run_recurrence(sys, ell_max, trunc);
    for (std::int64_t ell = 0; ell <= ell_max; ++ell) {
      const QLaurent diff = (u[static_cast<std::size_t>(ell)] - counter.g(ell * n - sys.a(1))).truncated(trunc);
      detail::record(c, diff.is_zero(),
                     [&] { return "u_" + std::to_string(ell) + " vs g: " + detail::first_term_text(diff); });
    }
    rep.checks.push_back(c);
  }
  if (selected("tmj")) {
    CheckResult c = CheckResult::named("tmj");
    for (long m = 1; m <= r; ++m)
      for (long j = 1; j <= r; ++j)
        detail::record(c, verify_Tmj(sys, m, j),
                       [&] { return "T_{" + std::to_string(m) + "," + std::to_string(j) + "} != T'"; });
    rep.checks.push_back(c);
  }
  if (selected("chain")) {
    CheckResult c = CheckResult::named("chain");
    if (r < 2) {
      c.skipped = true;
      c.detail = "needs at least two generators";
    } else {
      const auto xt = static_cast<std::size_t>(cfg.x_trunc);
      rep.chain = verify_chain(sys, std::max<std::int64_t>(ell_max, cfg.x_trunc), xt, trunc);
      for (const auto& st : rep.chain->stages)
        detail::record(c, st.residual_zero, [&] {
          const auto& m = *st.first_offending;
          return st.name + ": x^" + std::to_string(m.x) + " q^" + std::to_string(m.q) + " coefficient " +
                 m.d.to_string();
        });
    }
    rep.checks.push_back(c);
  }
  if (selected("theorem")) {
    CheckResult c = CheckResult::named("theorem");
    const CountTable f = count_F(sys, trunc);
    const CountTable g = counter.count();
    const CountTable p = CountTable::from_series(product_F(sys, trunc), trunc);
    const QLaurent lim = limit_u(sys, trunc);
    const CountTable l = CountTable::from_series(lim, trunc);
    const auto compare = [&](const CountTable& x, const char* name) {
      const auto d = f.first_difference(x);
      detail::record(c, !d, [&] {
        return std::string("F vs ") + name + " at k=" + std::to_string(d->first) + " n=" + std::to_string(d->second);
      });
    };
    compare(g, "G");
    compare(p, "product");
    compare(l, "limit");
    const CountTable andrews = count_G_andrews_k0(sys, trunc);
    for (std::int64_t m = 0; m <= trunc; ++m)
      detail::record(c, andrews.entry(0, m) == g.entry(0, m),
                     [&] { return "Andrews k=0 count differs at n=" + std::to_string(m); });
    QLaurent distinct = QLaurent::one(trunc);
    for (int i = 1; i <= r; ++i) distinct *= pochhammer_expand(-1, 0, n - sys.a(i), n, std::nullopt, trunc);
    detail::record(c, lim.at_d_zero() == distinct, [] { return std::string("d=0 limit differs from distinct-part product"); });
    rep.checks.push_back(c);
  }
  return rep;
}

inline Json to_json(const SystemReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json j{{"name", c.name}, {"pass", c.pass}, {"cases", c.cases}};
    if (c.skipped) j["skipped"] = true;
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  Json j{{"system", opart::to_json(rep.system)}, {"checks", checks}, {"verdict", rep.passed() ? "pass" : "fail"}};
  if (rep.chain) j["chain"] = opart::to_json(*rep.chain);
  return j;
}

inline int cmd_verify(const RunConfig& cfg, const std::vector<AlphaSystem>& systems, std::ostream& out) {
  std::vector<std::future<SystemReport>> jobs;
  for (const auto& sys : systems)
    jobs.push_back(std::async(std::launch::async, [&cfg, sys] { return verify_system(sys, cfg); }));
  std::vector<SystemReport> reports;
  for (auto& j : jobs) reports.push_back(j.get());
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const SystemReport& r) { return r.passed(); });

  if (cfg.output == "json") {
    Json j;
    if (cfg.battery) {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      j = Json{{"systems", arr}, {"verdict", ok ? "pass" : "fail"}};
    } else {
      j = to_json(reports.front());
    }
    out << canonical(j) << "\n";
  } else if (cfg.output == "csv") {
    out << "N,a,check,pass,cases,detail\n";
    for (const auto& r : reports) {
      std::string a;
      for (auto x : r.system.generators()) a += (a.empty() ? "" : " ") + std::to_string(x);
      for (const auto& c : r.checks)
        out << r.system.modulus() << "," << a << "," << c.name << "," << (c.pass ? "pass" : "fail") << "," << c.cases
            << ",\"" << c.detail << "\"\n";
    }
  } else {
    for (const auto& r : reports) {
      out << system_label(r.system) << "\n";
      for (const auto& c : r.checks) {
        out << "  " << std::left << std::setw(8) << c.name << std::right << (c.skipped ? "skip" : c.pass ? "pass" : "FAIL")
            << "  " << c.cases << " cases";
        if (!c.detail.empty()) out << "  " << c.detail;
        out << "\n";
      }
    }
    out << "verdict: " << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? kPass : kMismatch;
}

// ---------------------------------------------------------------- entry point

inline std::string error_kind(const Error& e) {
  const auto is = [&](auto* tag) { return dynamic_cast<decltype(tag)>(&e) != nullptr; };
  if (is(static_cast<const DominanceViolated*>(nullptr))) return "DominanceViolated";
  if (is(static_cast<const SumsNotDistinct*>(nullptr))) return "SumsNotDistinct";
  if (is(static_cast<const ModulusTooSmall*>(nullptr))) return "ModulusTooSmall";
  if (is(static_cast<const TooManyGenerators*>(nullptr))) return "TooManyGenerators";
  if (is(static_cast<const ConventionOutOfRange*>(nullptr))) return "ConventionOutOfRange";
  if (is(static_cast<const InvalidInput*>(nullptr))) return "InvalidInput";
  if (is(static_cast<const NotStabilized*>(nullptr))) return "NotStabilized";
  if (is(static_cast<const ChainBroken*>(nullptr))) return "ChainBroken";
  if (is(static_cast<const InsufficientPrecision*>(nullptr))) return "InsufficientPrecision";
  return "Error";
}

/// Runs the command line `args` (without the program name). Returns the exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Overpartition identities: counting, series expansion and verification", "opart"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_system = [&](CLI::App* sub) {
    sub->add_option("--N", cfg.modulus, "modulus N")->check(CLI::PositiveNumber);
    sub->add_option("--a", cfg.a, "generators a(1),...,a(r)")->delimiter(',');
    sub->add_option("--output", cfg.output, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
  };

  auto* count = app.add_subcommand("count", "tabulate F and/or G counts by (k, n)");
  add_system(count);
  count->add_option("--n-max", cfg.n_max, "largest n")->check(CLI::NonNegativeNumber)->capture_default_str();
  count->add_option("--side", cfg.side, "F, G or all")->check(CLI::IsMember({"F", "G", "all"}))->capture_default_str();

  auto* expand = app.add_subcommand("expand", "expand a series in q and d");
  add_system(expand);
  expand->add_option("--what", cfg.what, "product, limit or gm")
      ->check(CLI::IsMember({"product", "limit", "gm"}))
      ->capture_default_str();
  expand->add_option("--trunc", cfg.trunc, "highest q-exponent")->check(CLI::NonNegativeNumber)->capture_default_str();
  expand->add_option("--m", cfg.m, "subscript of g_m")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "check the identities; exit 1 on any mismatch");
  add_system(verify);
  verify->add_option("--trunc", cfg.trunc, "highest q-exponent")->check(CLI::NonNegativeNumber)->capture_default_str();
  verify->add_option("--x-trunc", cfg.x_trunc, "highest x-degree in the chain")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--ell-max", cfg.ell_max, "recurrence length (default ceil((trunc+a1)/N)+1)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--checks", cfg.checks, "subset of lemma1,lemma2,eq357,key,rec,tmj,chain,theorem")
      ->delimiter(',')
      ->check(CLI::IsMember(all_checks()));
  verify->add_flag("--battery", cfg.battery, "run the built-in battery of systems");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    std::vector<AlphaSystem> systems;
    if (cfg.command == "verify" && cfg.battery) {
      if (cfg.modulus || !cfg.a.empty()) throw InvalidInput("--battery cannot be combined with --N/--a");
      systems = battery_systems();
    } else {
      if (!cfg.modulus || cfg.a.empty()) throw InvalidInput("--N and --a are required");
      systems.push_back(build_system(cfg.a, *cfg.modulus));
    }
    if (cfg.command == "count") return cmd_count(cfg, systems.front(), out, err);
    if (cfg.command == "expand") return cmd_expand(cfg, systems.front(), out);
    return cmd_verify(cfg, systems, out);
  } catch (const InvalidInput& e) {
    err << "error: " << error_kind(e) << ": " << e.what() << "\n";
    return kInvalidInput;
  } catch (const Error& e) {
    err << "mismatch: " << error_kind(e) << ": " << e.what() << "\n";
    return kMismatch;
  }
}

}  // namespace opart::cli
