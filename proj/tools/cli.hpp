#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zflat/json_io.hpp"
#include "zflat/verify.hpp"
#include "zflat/zflat.hpp"

namespace zflat::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailed = 2;
inline constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string input;
  std::string catalog;
  bool pretty = false;
  std::uint64_t seed = 0;
  int threads = 1;
  int trials = 200;
  std::string budget;
};

/// "exact:<n>" caps exhaustive computations at n elements; "certify" disables exact branch-width.
struct Budget {
  std::optional<int> exact;
  bool certify_only = false;

  int limit(int fallback) const { return exact.value_or(fallback); }
};

inline Budget parse_budget(const std::string& s) {
  Budget b;
  if (s.empty()) return b;
  if (s == "certify") {
    b.certify_only = true;
    return b;
  }
  if (s.rfind("exact:", 0) == 0) {
    try {
      b.exact = std::stoi(s.substr(6));
    } catch (const std::exception&) {
      throw UsageError("bad budget " + s);
    }
    if (*b.exact < 0 || *b.exact > kMaxElements) throw UsageError("budget out of range: " + s);
    return b;
  }
  throw UsageError("budget must be exact:<n> or certify");
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

inline Matroid load_named(const std::string& name) {
  auto entry = catalog_entry(name);
  if (!entry) throw UsageError("unknown catalog matroid " + name);
  return entry->matroid;
}

/// Positional catalog name, then --catalog, then --input.
inline Matroid load_matroid(const std::string& positional, const Globals& g) {
  if (!positional.empty()) return load_named(positional);
  if (!g.catalog.empty()) return load_named(g.catalog);
  if (!g.input.empty()) return json_io::matroid_from_json(read_json_file(g.input));
  throw UsageError("no matroid given (name it, or use --catalog or --input)");
}

inline std::vector<Mask> parse_sets(const GroundSet& ground, const std::string& spec) {
  std::vector<Mask> out;
  if (spec.empty()) return out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, '|')) out.push_back(ground.parse(part));
  return out;
}

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// "rank-lt:<c>:<k>" or "size-le:<s>:<k>".
inline Tangle parse_family(const std::string& s) {
  auto parts = std::vector<std::string>{};
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("tangle family must be rank-lt:<c>:<k> or size-le:<s>:<k>");
  int a = 0, k = 0;
  try {
    a = std::stoi(parts[1]);
    k = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("bad tangle family " + s);
  }
  if (parts[0] == "rank-lt") return {k, RankBelow{a}};
  if (parts[0] == "size-le") return {k, SizeAtMost{a}};
  throw UsageError("unknown tangle family " + parts[0]);
}

/// Runs one command line (without the program name). Output goes to `out` as JSON, diagnostics to `err`.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matroid workbench over lattices of cyclic flats", "zflat"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--input", g.input, "matroid JSON file");
  app.add_option("--catalog", g.catalog, "catalog matroid name (fig1_M, ..., U<r>_<n>)");
  app.add_flag("--pretty", g.pretty, "indent JSON output");
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--trials", g.trials, "trials for randomized suites")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "exact:<n> or certify");

  std::string name, name2, set_spec, sets_spec, elements_spec, order_spec, upper_file, lower_spec, tangle_file,
      suite, theorem;
  int t = 2, count = 2, slack = 1;
  bool exact_flag = false, certify_flag = false;

  auto positional = [&](CLI::App* sub) { sub->add_option("matroid", name, "catalog matroid name"); };

  auto* validate = app.add_subcommand("validate", "check the cyclic-flat axioms");
  positional(validate);
  auto* rank = app.add_subcommand("rank", "rank of a set (default: the whole ground set)");
  positional(rank);
  rank->add_option("--set", set_spec, "comma-separated labels");
  auto* tutte = app.add_subcommand("tutte", "Tutte polynomial");
  positional(tutte);
  auto* config = app.add_subcommand("config", "configuration (decorated lattice of cyclic flats)");
  positional(config);
  auto* compare = config->add_subcommand("compare", "configuration isomorphism");
  compare->add_option("first", name, "catalog matroid")->required();
  compare->add_option("second", name2, "catalog matroid")->required();
  auto* expand_cmd = app.add_subcommand("expand", "t-expansion");
  positional(expand_cmd);
  expand_cmd->add_option("--t", t, "expansion factor")->check(CLI::PositiveNumber);
  auto* deflate_cmd = app.add_subcommand("deflate", "recover N from N^t");
  positional(deflate_cmd);
  deflate_cmd->add_option("--t", t, "expansion factor")->check(CLI::PositiveNumber);
  auto* union_cmd = app.add_subcommand("union", "union of rank-1 matroids on the given sets");
  union_cmd->add_option("--sets", sets_spec, "sets separated by |, e.g. \"1,2,3|4,5,6\"")->required();
  union_cmd->add_option("--elements", elements_spec, "ground set labels, comma-separated");
  positional(union_cmd);
  auto* tau = app.add_subcommand("tau", "Tutte connectivity");
  positional(tau);
  auto* kappa = app.add_subcommand("kappa", "vertical connectivity");
  positional(kappa);
  auto* cover = app.add_subcommand("flats-cover", "do <count> proper flats cover all but <slack> elements");
  positional(cover);
  cover->add_option("--count", count)->check(CLI::PositiveNumber);
  cover->add_option("--slack", slack)->check(CLI::NonNegativeNumber);
  auto* bw = app.add_subcommand("bw", "branch-width");
  positional(bw);
  bw->add_flag("--exact", exact_flag, "exact dynamic programming");
  bw->add_flag("--certify", certify_flag, "certificate from a decomposition and a tangle");
  bw->add_option("--upper", upper_file, "branch-decomposition JSON");
  bw->add_option("--lower", lower_spec, "rank-lt:<c>:<k> or size-le:<s>:<k>");
  auto* tangle = app.add_subcommand("tangle", "tangle commands");
  auto* tangle_verify = tangle->add_subcommand("verify", "check the tangle axioms");
  tangle_verify->add_option("matroid", name, "catalog matroid name");
  tangle_verify->add_option("--family", lower_spec, "rank-lt:<c>:<k> or size-le:<s>:<k>");
  tangle_verify->add_option("--tangle", tangle_file, "tangle JSON");
  tangle->require_subcommand(1);
  auto* pcheck = app.add_subcommand("positroid-check", "is the order a positroid order");
  positional(pcheck);
  pcheck->add_option("--order", order_spec, "comma-separated labels")->required();
  auto* psearch = app.add_subcommand("positroid-search", "find a positroid order");
  positional(psearch);
  auto* pverify = app.add_subcommand("presentation-verify", "does the presentation give the matroid");
  positional(pverify);
  pverify->add_option("--sets", sets_spec, "sets separated by |")->required();
  auto* verify = app.add_subcommand("verify", "run a verification suite or one scaling theorem");
  verify->add_option("--suite", suite, "figures, tau, kappa, bw, expansion-lemmas, classes, equivalences");
  verify->add_option("--theorem", theorem, "tau-scaling or kappa-scaling");
  verify->add_option("--matroid", name, "catalog matroid for --theorem");
  verify->add_option("--t", t, "expansion factor for --theorem")->check(CLI::PositiveNumber);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  auto emit = [&](const json& j) { out << (g.pretty ? j.dump(2) : j.dump()) << "\n"; };

  try {
    const Budget budget = parse_budget(g.budget);
    SuiteOptions opt;
    opt.seed = g.seed;
    opt.threads = g.threads;
    opt.trials = g.trials;
    opt.exact_budget = budget.certify_only ? 0 : budget.limit(18);

    if (*validate) {
      json raw;
      if (!name.empty() || !g.catalog.empty()) {
        raw = json_io::to_json(load_matroid(name, g));
      } else if (!g.input.empty()) {
        raw = read_json_file(g.input);
      } else {
        throw UsageError("no matroid given");
      }
      GroundSet ground(raw.at("elements").get<std::vector<std::string>>());
      std::vector<CyclicFlat> zee;
      for (const auto& z : raw.at("cyclic_flats")) {
        zee.push_back({json_io::mask_from(ground, z.at("set")), z.at("rank").get<int>()});
      }
      if (auto report = check_axioms(ground, zee)) {
        emit({{"valid", false},
              {"axiom", std::string(axiom_name(report->axiom))},
              {"first", ground.labels_of(report->first)},
              {"second", ground.labels_of(report->second)},
              {"detail", report->detail}});
        return kExitFailed;
      }
      const auto m = Matroid::from_cyclic_flats(ground, zee);
      emit({{"valid", true}, {"elements", m.size()}, {"rank", m.rank()}, {"cyclic_flats", m.cyclic_flats().size()}});
      return kExitOk;
    }
    if (*rank) {
      const auto m = load_matroid(name, g);
      const Mask x = set_spec.empty() ? m.full() : m.ground().parse(set_spec);
      emit({{"set", m.ground().labels_of(x)}, {"rank", m.rank(x)}});
      return kExitOk;
    }
    if (*tutte) {
      const auto m = load_matroid(name, g);
      emit(json_io::to_json(tutte_polynomial(m, g.threads, budget.limit(24))));
      return kExitOk;
    }
    if (*compare) {
      const auto a = load_named(name), b = load_named(name2);
      const auto w = config_isomorphic(configuration(a), configuration(b));
      json j{{"isomorphic", w.has_value()}};
      if (w) j["witness"] = *w;
      emit(j);
      return kExitOk;
    }
    if (*config) {
      emit(json_io::to_json(configuration(load_matroid(name, g))));
      return kExitOk;
    }
    if (*expand_cmd) {
      const auto [mt, map] = expand(load_matroid(name, g), t);
      emit({{"matroid", json_io::to_json(mt)}, {"map", json_io::to_json(map)}});
      return kExitOk;
    }
    if (*deflate_cmd) {
      const auto [n, map] = deflate(load_matroid(name, g), t);
      emit({{"matroid", json_io::to_json(n)}, {"map", json_io::to_json(map)}});
      return kExitOk;
    }
    if (*union_cmd) {
      GroundSet ground = !elements_spec.empty() ? GroundSet(split_csv(elements_spec)) : load_matroid(name, g).ground();
      Presentation p{parse_sets(ground, sets_spec)};
      emit(json_io::to_json(presentation_matroid(p, ground, budget.limit(24))));
      return kExitOk;
    }
    if (*tau) {
      const auto m = load_matroid(name, g);
      emit(json_io::to_json(m.ground(), tutte_connectivity(m, g.threads, budget.limit(20))));
      return kExitOk;
    }
    if (*kappa) {
      const auto m = load_matroid(name, g);
      emit(json_io::to_json(m.ground(), vertical_connectivity(m, g.threads, budget.limit(20))));
      return kExitOk;
    }
    if (*cover) {
      const auto m = load_matroid(name, g);
      emit(json_io::to_json(m.ground(), flats_cover(m, count, slack, budget.limit(24))));
      return kExitOk;
    }
    if (*bw) {
      const auto m = load_matroid(name, g);
      if (exact_flag == certify_flag) throw UsageError("bw needs exactly one of --exact or --certify");
      if (exact_flag) {
        if (budget.certify_only) throw UsageError("--budget certify forbids --exact");
        const auto r = branch_width_exact(m, g.threads, budget.limit(18));
        emit({{"value", r.width}, {"decomposition", json_io::to_json(m.ground(), r.decomposition)}});
        return kExitOk;
      }
      if (upper_file.empty() || lower_spec.empty()) throw UsageError("--certify needs --upper and --lower");
      const auto tree = json_io::decomposition_from_json(m.ground(), read_json_file(upper_file));
      const auto cert = branch_width_certified(m, tree, parse_family(lower_spec), g.threads, budget.limit(20));
      emit(json_io::to_json(m.ground(), cert));
      return kExitOk;
    }
    if (*tangle_verify) {
      const auto m = load_matroid(name, g);
      Tangle tg;
      if (!lower_spec.empty()) {
        tg = parse_family(lower_spec);
      } else if (!tangle_file.empty()) {
        tg = json_io::tangle_from_json(m.ground(), read_json_file(tangle_file));
      } else {
        throw UsageError("tangle verify needs --family or --tangle");
      }
      const auto v = verify_tangle(m, tg, g.threads, budget.limit(20));
      emit(json_io::to_json(m.ground(), v));
      return v.valid ? kExitOk : kExitFailed;
    }
    if (*pcheck) {
      const auto m = load_matroid(name, g);
      const auto order = parse_order(m.ground(), split_csv(order_spec));
      const auto v = is_positroid_order(m, order);
      json j{{"positroid_order", v.valid}};
      if (v.witness) {
        j["flat"] = m.ground().labels_of(v.witness->flat);
        j["component"] = m.ground().labels_of(v.witness->component);
      }
      emit(j);
      return v.valid ? kExitOk : kExitFailed;
    }
    if (*psearch) {
      const auto m = load_matroid(name, g);
      const auto order = positroid_search(m, budget.limit(9));
      emit({{"order", order ? json(order_labels(m.ground(), *order)) : json(nullptr)}});
      return kExitOk;
    }
    if (*pverify) {
      const auto m = load_matroid(name, g);
      const bool ok = verify_presentation(m, Presentation{parse_sets(m.ground(), sets_spec)}, budget.limit(24));
      emit({{"presents", ok}});
      return ok ? kExitOk : kExitFailed;
    }
    if (*verify) {
      if (suite.empty() == theorem.empty()) throw UsageError("verify needs exactly one of --suite or --theorem");
      VerificationReport report;
      if (!suite.empty()) {
        report = run_suite(suite, opt);
      } else {
        if (name.empty()) throw UsageError("--theorem needs --matroid");
        report = verify_theorem(theorem, name, t, opt, budget.limit(20));
      }
      emit(report.to_json());
      return report.passed() ? kExitOk : kExitFailed;
    }
    throw UsageError("no command");
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    emit({{"error", e.what()}});
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace zflat::cli
