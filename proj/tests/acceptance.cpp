// Acceptance run: one PASS/FAIL line per criterion, each evaluated at q = 0.3, 0.5 and 0.8.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "qflag/suites.hpp"

namespace {

struct SuiteRun {
  std::string suite;
  qflag::RunConfig cfg;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<SuiteRun> runs;
};

qflag::RunConfig config(int shell = -1, double tol = -1.0, int m_max = 40) {
  qflag::RunConfig cfg;
  cfg.shell = shell;
  cfg.tol = tol;
  cfg.m_max = m_max;
  return cfg;
}

std::vector<Criterion> criteria() {
  qflag::RunConfig phase = config(-1, 1e-6, 40);
  phase.k_values = {1, 2, 3, 4, 5};
  return {
      {1, "q-calculus identities", {{"qcalc-identities", config(-1, 1e-10)}}},
      {2, "representation soundness", {{"representations", config(8, 1e-9)}}},
      {3, "class-1 golden match", {{"class1-golden", config(-1, 1e-9)}}},
      {4, "change of basis", {{"gt-change-of-basis", config(-1, 1e-10)}, {"racah", config(-1, 1e-9)}}},
      {5, "phase asymptotics", {{"phase-asymptotics", phase}}},
      {6, "telescoping norm limit", {{"telescoping", config(-1, 1e-6, 40)}}},
      {7, "orthotypicality decay", {{"orthotypicality", config(-1, 1e-10, 40)}}},
      {8, "hexagon exactness", {{"hexagon", config(8, 1e-9)}}},
      {9, "normalized BGG defects", {{"bgg-defects", config(10, 0.1)}}},
      {10, "index bookkeeping", {{"bgg-index", config(20)}}},
      {11, "Yetter-Drinfeld unitarity and covariance", {{"yd-unitarity", config(6, 1e-8)}}},
      {12, "commutator and equivariance defects", {{"commutator-defects", config(-1, 0.1)}}},
  };
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool evaluate(const Criterion& c, const std::vector<double>& qs, bool verbose) {
  int checks = 0;
  std::vector<std::string> failures, notes;
  for (double q : qs)
    for (SuiteRun run : c.runs) {
      run.cfg.q = q;
      const auto report = qflag::run_suite(run.suite, run.cfg);
      checks += static_cast<int>(report.checks.size());
      for (const auto& ch : report.checks)
        if (!ch.pass)
          failures.push_back("q=" + fmt(q) + " " + run.suite + ": " + ch.name + " value " + fmt(ch.value) +
                             " bound " + fmt(ch.bound));
      for (const auto& n : report.notes) notes.push_back("q=" + fmt(q) + " " + run.suite + ": " + n);
    }
  const bool pass = checks > 0 && failures.empty();
  std::printf("criterion %2d %s  %s  (%d checks, %zu failed)\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(),
              checks, failures.size());
  for (const auto& f : failures) std::printf("    failed  %s\n", f.c_str());
  if (verbose || !pass)
    for (const auto& n : notes) std::printf("    note    %s\n", n.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria report"};
  int only = 0;
  bool verbose = false;
  std::vector<double> qs{0.3, 0.5, 0.8};
  app.add_option("--criterion", only, "run a single criterion (1..12)")->check(CLI::Range(1, 12));
  app.add_option("--q", qs, "q values");
  app.add_flag("--verbose", verbose, "print suite notes for passing criteria too");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& c : criteria())
    if (only == 0 || c.id == only) failed += !evaluate(c, qs, verbose);
  return failed == 0 ? 0 : 1;
}
