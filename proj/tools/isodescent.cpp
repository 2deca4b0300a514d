// isodescent: rank bounds and torsion for y^2 = x^3 + a x^2 + b x.
//
// Exit codes: 0 success, 1 a computed result contradicts an asserted rank or
// torsion, 2 usage error or invalid input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include <isodescent/commands.hpp>

namespace {

using namespace isodescent;

constexpr int usage_error = 2;

struct Args {
  std::string a, b, p, q, k, l, b1, b2;
  std::string limit;
  std::string theorem = "1.1";
  std::string format = "json";
  std::string out;
  std::uint64_t bound = 1000;
  std::uint64_t point_bound = 10000;
  unsigned jobs = 1;
  int table = 0;
  bool all_congruent = false;
  bool timing = false;
};

RunOptions run_options(const Args& args)
{
  RunOptions run;
  run.descent.search_bound = args.bound;
  run.descent.point_bound = args.point_bound;
  run.descent.jobs = args.jobs;
  run.format = args.format == "table" ? Format::table : Format::json;
  run.timing = args.timing;
  return run;
}

Integer required_integer(const std::string& value, const char* flag)
{
  if (value.empty()) throw std::invalid_argument(std::string("missing ") + flag);
  return parse_integer(value);
}

FamilyParams family_params(const Args& args)
{
  const bool by_pq = !args.p.empty() || !args.q.empty();
  const bool by_kl = !args.k.empty() || !args.l.empty();
  if (by_pq == by_kl) throw std::invalid_argument("give either --p and --q or --k and --l");
  if (by_kl) return FamilyParams::from_kl(required_integer(args.k, "--k"), required_integer(args.l, "--l"));
  return FamilyParams(required_integer(args.p, "--p"), required_integer(args.q, "--q"));
}

Theorem parse_theorem(const std::string& s)
{
  if (s == "1.1") return Theorem::thm11;
  if (s == "1.2") return Theorem::thm12;
  throw std::invalid_argument("unknown theorem '" + s + "' (expected 1.1 or 1.2)");
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Rank bounds by 2-isogeny descent and rational torsion for y^2 = x^3 + a x^2 + b x"};
  app.require_subcommand(1);
  app.fallthrough();

  Args args;
  app.add_option("--format", args.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--jobs", args.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--bound", args.bound, "Torsor search bound on M and e")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  app.add_option("--point-bound", args.point_bound, "Height bound for the rational point search, 0 disables")
      ->check(CLI::Range(std::uint64_t{0}, std::uint64_t{1} << 40));
  app.add_option("--out", args.out, "Write the report to FILE instead of standard output");
  app.add_flag("--timing", args.timing, "Include elapsed time in the report");

  auto* descend = app.add_subcommand("descend", "Descent and torsion for an arbitrary curve");
  descend->add_option("--a", args.a, "Coefficient of x^2")->required();
  descend->add_option("--b", args.b, "Coefficient of x")->required();

  auto* torsion = app.add_subcommand("torsion", "Rational torsion subgroup");
  torsion->add_option("--a", args.a, "Coefficient of x^2")->required();
  torsion->add_option("--b", args.b, "Coefficient of x")->required();

  auto* family = app.add_subcommand("family", "Verify the family curve y^2 = x^3 - 5pq x");
  family->add_option("--p", args.p, "Prime p");
  family->add_option("--q", args.q, "Prime q");
  family->add_option("--k", args.k, "p = 40k + 33");
  family->add_option("--l", args.l, "q = 40l + 27");

  auto* table = app.add_subcommand("table", "Recompute a published table");
  table->add_option("which", args.table, "Table number")->required()->check(CLI::IsMember({1, 2}));

  auto* scan = app.add_subcommand("scan", "Verify every prime pair below a limit");
  scan->add_option("--theorem", args.theorem, "Theorem whose hypothesis selects the pairs")
      ->check(CLI::IsMember({"1.1", "1.2"}));
  scan->add_option("--limit", args.limit, "Upper bound on p and q")->required();
  scan->add_flag("--all-congruent", args.all_congruent, "For 1.2, drop the perfect-square condition");

  auto* torsor = app.add_subcommand("torsor", "Solve or obstruct N^2 = b1 M^4 + a M^2 e^2 + b2 e^4");
  torsor->add_option("--b1", args.b1, "Coefficient of M^4")->required();
  torsor->add_option("--a", args.a, "Coefficient of M^2 e^2")->required();
  torsor->add_option("--b2", args.b2, "Coefficient of e^4")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage_error;
  }

  CommandResult result;
  try {
    const RunOptions run = run_options(args);
    if (*descend) {
      result = cmd_descend(required_integer(args.a, "--a"), required_integer(args.b, "--b"), run);
    } else if (*torsion) {
      result = cmd_torsion(required_integer(args.a, "--a"), required_integer(args.b, "--b"), run);
    } else if (*family) {
      result = cmd_family(family_params(args), run);
    } else if (*table) {
      result = cmd_table(args.table, run);
    } else if (*scan) {
      result = cmd_scan(parse_theorem(args.theorem), required_integer(args.limit, "--limit"), args.all_congruent, run);
    } else {
      Torsor t{required_integer(args.b1, "--b1"), required_integer(args.a, "--a"), required_integer(args.b2, "--b2")};
      result = cmd_torsor(t, run);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage_error;
  }

  if (args.out.empty()) {
    std::cout << result.output;
    std::cout.flush();
  } else {
    std::ofstream file(args.out, std::ios::binary);
    file << result.output;
    if (!file) {
      std::cerr << "error: cannot write " << args.out << "\n";
      return usage_error;
    }
  }
  return result.exit_code;
}
