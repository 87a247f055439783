#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "qflag/cache.hpp"
#include "qflag/subharm.hpp"
#include "qflag/suites.hpp"

namespace {

// "1..5" or "1,3,4" into a list of integers.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  return out;
}

struct Options {
  qflag::RunConfig run;
  std::string cache_dir;
  std::string format = "csv";
  std::string k_list;
  std::string name;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--q", opt.run.q, "deformation parameter in (0, 1)")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--n", opt.run.n, "rank of gl_n")->check(CLI::Range(2, 6));
  cmd->add_option("--m-max", opt.run.m_max, "largest m in m-scans")->check(CLI::PositiveNumber);
  cmd->add_option("--shell", opt.run.shell, "shell cutoff L")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", opt.run.tol, "override of the suite tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--cache-dir", opt.cache_dir, "representation cache directory (default $QFLAG_CACHE_DIR)");
  cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--k", opt.k_list, "k values, e.g. 1..5 or 1,2");
  cmd->add_option("--l", opt.run.l, "string index l")->check(CLI::PositiveNumber);
  cmd->add_option("--m", opt.run.m, "representation label m")->check(CLI::PositiveNumber);
}

void install_cache(const Options& opt) {
  const std::filesystem::path dir =
      opt.cache_dir.empty() ? qflag::default_cache_dir() : std::filesystem::path(opt.cache_dir);
  if (dir.empty()) return;
  auto cache = std::make_shared<qflag::IrrepCache>(dir);
  qflag::set_irrep_loader([cache](const qflag::Weight& lambda, const qflag::QContext& ctx) {
    return cache->get(lambda, ctx);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification harness for quantum flag manifolds of SU_q(n)"};
  app.require_subcommand(1);
  Options opt;

  std::string suites_help = "suite:";
  for (const auto& s : qflag::suite_names()) suites_help += " " + s;
  auto* verify = app.add_subcommand("verify", "run a verification suite; exit 0 iff every check passes");
  verify->add_option("suite", opt.name, suites_help)->required()->check(CLI::IsMember(qflag::suite_names()));
  add_common(verify, opt);

  std::string tables_help = "table:";
  for (const auto& t : qflag::table_names()) tables_help += " " + t;
  auto* table = app.add_subcommand("table", "print the numeric table behind a suite");
  table->add_option("table", opt.name, tables_help)->required()->check(CLI::IsMember(qflag::table_names()));
  add_common(table, opt);

  auto* list = app.add_subcommand("list", "list suites and tables");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& s : qflag::suite_names()) std::cout << "suite " << s << '\n';
    for (const auto& t : qflag::table_names()) std::cout << "table " << t << '\n';
    return 0;
  }

  try {
    if (!opt.k_list.empty()) opt.run.k_values = parse_int_list(opt.k_list);
    install_cache(opt);
    if (verify->parsed()) {
      const auto report = qflag::run_suite(opt.name, opt.run);
      std::cout << (opt.format == "json" ? qflag::report_json(report) : qflag::report_csv(report));
      return report.passed() ? 0 : 1;
    }
    const auto t = qflag::make_table(opt.name, opt.run);
    std::cout << (opt.format == "json" ? t.json() : t.csv());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
