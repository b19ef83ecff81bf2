// modstrat: cohomology rings, supports and verification suites from the
// command line. Exit codes: 0 all checks passed, 1 a check failed, 2 usage or
// configuration error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "modstrat/common/error.hpp"
#include "modstrat/verify/suites.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;
  bool text = false;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) modstrat::fail(modstrat::ErrorCode::InvalidInput, "cannot open '" + path + "' for writing");
    os = &file;
  }
  void json_line(const nlohmann::json& j) { *os << j.dump() << '\n'; }
  void report(const modstrat::CheckReport& r) {
    if (!text) return json_line(r.to_json());
    *os << (r.passed ? "PASS " : "FAIL ") << r.check << ' ' << r.inputs.dump() << '\n';
  }
};

std::vector<std::string> split_groups(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable module categories over rings: cohomology, support and verification suites"};
  app.require_subcommand(1);

  std::string group, ring, out_path, format = "json", module, suite;
  int cap = 0, tate_range = 0, nil_bound = 0, count = 0;
  std::uint64_t seed = 1;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", group, "builtin name (C2 C3 C4 C6 V4 E9 S3 D4 Q8) or group JSON file; "
                                      "verify accepts a comma-separated list");
    sub->add_option("--ring", ring, "Z | Q | Fp:p (or F2, F3, ..) | Zp:p | Fq:p,n");
    sub->add_option("--cap", cap, "degree cap");
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* coh = app.add_subcommand("cohomology", "presentation of H*(G; R) through the cap");
  common(coh);
  coh->get_option("--group")->required();

  CLI::App* ver = app.add_subcommand("verify", "run a named verification suite");
  common(ver);
  ver->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(modstrat::suite_names()));
  ver->add_option("--tate-range", tate_range, "Tate degrees |n| <= range");
  ver->add_option("--nil-bound", nil_bound, "largest nil exponent searched");
  ver->add_option("--seed", seed, "seed for the pseudorandom lattices");
  ver->add_option("--count", count, "pseudorandom lattices per group and ring");

  CLI::App* sup = app.add_subcommand("support", "cohomological support of a module");
  common(sup);
  sup->get_option("--group")->required();
  sup->add_option("--module", module, "trivial | regular | free:n | perm:g,.. | sign:g,.. | omega:n | "
                                      "dual:<spec> | Lzeta:<class> | file:<path>")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kConfig;
  }

  modstrat::RunConfig cfg;
  cfg.groups = split_groups(group);
  if (!ring.empty()) cfg.ring = ring;
  auto given = [](CLI::App* sub, const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };
  CLI::App* active = app.get_subcommands().front();
  if (given(active, "--cap")) cfg.cap = cap;
  if (given(active, "--tate-range")) cfg.tate_range = tate_range;
  if (given(active, "--nil-bound")) cfg.nil_bound = nil_bound;
  if (given(active, "--count")) cfg.count = count;
  cfg.seed = seed;

  Output out;
  out.text = format == "text";
  try {
    out.open(out_path);
    if (active == coh) {
      out.json_line(modstrat::cohomology_report(cfg));
      return kPass;
    }
    if (active == sup) {
      out.json_line(modstrat::support_report(cfg, module));
      return kPass;
    }
    const bool ok = modstrat::run_suite(suite, cfg, [&](const modstrat::CheckReport& r) {
      out.report(r);
      out.os->flush();
    });
    return ok ? kPass : kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
}
