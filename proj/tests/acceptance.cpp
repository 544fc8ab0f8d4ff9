// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zflat/verify.hpp"
#include "zflat/zflat.hpp"

namespace {

using namespace zflat;

struct Criterion {
  int id;
  std::string title;
  bool pass = true;
  std::vector<std::string> failures;
  double seconds = 0;
};

void absorb(Criterion& c, const VerificationReport& r, const std::string& group) {
  c.seconds += r.seconds;
  for (const auto& check : r.checks) {
    if (check.group != group) continue;
    if (check.status == CheckStatus::Fail) {
      c.pass = false;
      c.failures.push_back(check.name + ": expected " + check.expected + ", observed " + check.observed +
                           (check.input.is_null() ? "" : " input " + check.input.dump()));
    }
  }
}

/// Exhaustive tree search and cyclic-set rank minima against the library on catalog restrictions.
Criterion oracle_equivalences() {
  Criterion c{9, "oracle equivalences"};
  const auto start = std::chrono::steady_clock::now();
  int trees_checked = 0, ranks_checked = 0;
  for (const auto& entry : catalog()) {
    const auto& m = entry.matroid;
    for (Mask x = 0; x <= m.full(); ++x) {
      const int k = popcount(x);
      if (k > 8) continue;
      const auto sub = restriction(m, x);
      const auto table = oracle::rank_by_flats(sub);
      if (oracle::rank_by_cyclic_sets(table, k) != table || !oracle::is_rank_function(table, k)) {
        c.pass = false;
        c.failures.push_back("rank minima differ on " + entry.name + "|" + m.ground().format(x));
      }
      ++ranks_checked;
      if (k <= 6) {
        const int dp = branch_width_exact(sub).width, brute = oracle::branch_width_by_trees(sub);
        if (dp != brute) {
          c.pass = false;
          c.failures.push_back("bw " + entry.name + "|" + m.ground().format(x) + ": dp " + std::to_string(dp) +
                               ", trees " + std::to_string(brute));
        }
        ++trees_checked;
      }
    }
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.title += " (" + std::to_string(trees_checked) + " tree searches, " + std::to_string(ranks_checked) + " rank tables)";
  return c;
}

}  // namespace

int main() {
  SuiteOptions opt;
  opt.seed = 0;
  opt.trials = 200;
  opt.threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<Criterion> criteria{
      {1, "figure values"},        {2, "Tutte connectivity scaling"}, {3, "vertical connectivity scaling"},
      {4, "branch-width"},         {5, "expansion lemmas"},           {6, "union construction"},
      {7, "class closure"},        {8, "equivalence theorems"},
  };
  auto run = [&](const std::string& suite, std::initializer_list<int> ids) {
    VerificationReport r;
    try {
      r = run_suite(suite, opt);
    } catch (const std::exception& e) {
      for (int id : ids) {
        criteria[id - 1].pass = false;
        criteria[id - 1].failures.push_back(std::string("suite aborted: ") + e.what());
      }
      return;
    }
    for (int id : ids) absorb(criteria[id - 1], r, std::to_string(id));
  };
  run("figures", {1});
  run("tau", {2});
  run("kappa", {3});
  run("bw", {4});
  run("expansion-lemmas", {5, 6});
  run("classes", {7});
  run("equivalences", {8});
  criteria.push_back(oracle_equivalences());

  bool all = true;
  for (const auto& c : criteria) {
    std::printf("criterion %d %-48s %s  (%.2fs)\n", c.id, c.title.c_str(), c.pass ? "PASS" : "FAIL", c.seconds);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    all = all && c.pass;
  }
  std::printf("%s\n", all ? "all acceptance criteria pass" : "acceptance criteria FAILED");
  return all ? 0 : 1;
}
