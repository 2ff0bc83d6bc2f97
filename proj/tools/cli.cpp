#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "permclass/asymptotics.hpp"
#include "permclass/catalog.hpp"
#include "permclass/oracle.hpp"
#include "permclass/sampler.hpp"

namespace permclass::cli {

namespace {

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string> kFormats = {"text", "json", "csv", "bfile"};

using Rows = std::vector<std::pair<std::size_t, std::string>>;

void write_rows(std::ostream& out, const Rows& rows, const std::string& format) {
  if (format == "csv") {
    out << "n,value\n";
    for (const auto& [n, v] : rows) out << n << ',' << v << '\n';
  } else if (format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [n, v] : rows) arr.push_back({{"n", n}, {"value", v}});
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& [n, v] : rows) out << n << ' ' << v << '\n';
  }
}

std::vector<Permutation> parse_contains(const std::string& text) {
  if (text.empty()) return {};
  return parse_pattern_list(text);
}

struct Options {
  std::string basis, contains, gf, num, den, cls, format = "text", method = "richardson";
  std::size_t max_n = 0, terms = 60, n = 0, length = 0, count = 1;
  unsigned order = 1;
  std::uint64_t seed = 1;
  int threads = 1;
};

int cmd_count(const Options& o, std::ostream& out) {
  PatternBasis basis = PatternBasis::parse(o.basis);
  auto must = parse_contains(o.contains);
  auto table = count_table(basis, must, o.max_n, o.threads);
  Rows rows;
  for (std::size_t n = 0; n < table.size(); ++n) rows.emplace_back(n, std::to_string(table[n]));
  write_rows(out, rows, o.format);
  return kSuccess;
}

int cmd_series(const Options& o, std::ostream& out) {
  catalog_entry(o.gf);
  if (o.format == "bfile") {
    out << export_bfile(o.gf, o.terms);
    return kSuccess;
  }
  auto s = evaluate(o.gf, o.terms);
  Rows rows;
  for (std::size_t n = 0; n <= s.order(); ++n) rows.emplace_back(n, to_decimal_string(s[n]));
  write_rows(out, rows, o.format);
  return kSuccess;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto& e = catalog_entry(o.gf);
  if (!e.basis) throw UsageError("entry " + e.id + " has no class description to enumerate");
  auto series = evaluate(o.gf, o.max_n);
  auto counts = count_table(*e.basis, e.must_contain, o.max_n, o.threads);
  if (e.nonempty_only) counts[0] = 0;
  bool ok = true;
  for (std::size_t n = 0; n <= o.max_n; ++n) {
    const bool pass = series[n] == Rational(Integer(std::to_string(counts[n])));
    ok = ok && pass;
    out << n << ' ' << to_decimal_string(series[n]) << ' ' << counts[n] << ' ' << (pass ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kSuccess : kFailure;
}

int cmd_identities(const Options& o, std::ostream& out) {
  auto report = check_identities(o.terms);
  for (const auto& r : report.results) {
    out << (r.holds ? "PASS " : "FAIL ") << r.name;
    if (r.first_failing_index) out << "  (first nonzero residual at z^" << *r.first_failing_index << ')';
    out << '\n';
  }
  out << (report.all_hold() ? "all residuals vanish" : "nonzero residuals") << " through z^" << report.order
      << '\n';
  return report.all_hold() ? kSuccess : kFailure;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const auto cls = parse_sampler_class(o.cls);
  SlotDP dp(cls, o.length);
  auto perms = sample_batch(dp, o.length, o.count, o.seed, o.threads);
  if (o.format == "json") {
    auto arr = nlohmann::json::array();
    for (const auto& p : perms) arr.push_back(p.values());
    out << arr.dump() << '\n';
  } else if (o.format == "csv") {
    out << "index,permutation\n";
    for (std::size_t i = 0; i < perms.size(); ++i) out << i << ",\"" << perms[i].to_string() << "\"\n";
  } else {
    for (const auto& p : perms) out << p.to_string() << '\n';
  }
  return kSuccess;
}

int cmd_growth(const Options& o, std::ostream& out) {
  auto coeffs = integer_coefficients(evaluate(o.gf, o.terms));
  out << format_real(growth_rate(coeffs, parse_growth_method(o.method)), 12) << '\n';
  return kSuccess;
}

int cmd_asym(const Options& o, std::ostream& out) {
  auto report = asymptotic_report(o.gf, o.n, o.order);
  if (o.format == "json") {
    out << to_json(report) << '\n';
    return kSuccess;
  }
  out << "entry " << report.entry << "\nn " << report.n << "\nK " << report.estimate.order << "\nexact "
      << report.exact.get_str() << "\npredicted " << format_real(report.estimate.predicted, 20)
      << "\nrelative_error " << format_real(report.relative_error, 6) << '\n';
  for (const auto& w : report.estimate.warnings) out << "warning " << w << '\n';
  return kSuccess;
}

int cmd_ratio(const Options& o, std::ostream& out) {
  out << format_real(ratio_limit(o.num, o.den, o.n), 12) << '\n';
  return kSuccess;
}

int cmd_info(const Options& o, std::ostream& out) {
  if (o.gf.empty()) {
    for (const auto& e : catalog()) out << e.id << "  " << e.description << '\n';
    return kSuccess;
  }
  out << entry_metadata_json(catalog_entry(o.gf)) << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pattern-class enumeration, generating functions, sampling and asymptotics"};
  app.require_subcommand(1);
  Options o;
  auto formats = CLI::IsMember(kFormats);

  auto* count = app.add_subcommand("count", "count class members for n = 0..max-n");
  count->add_option("--basis", o.basis, "patterns, e.g. 4123,1324")->required();
  count->add_option("--contains", o.contains, "patterns every member must contain");
  count->add_option("--max-n", o.max_n)->required();
  count->add_option("--threads", o.threads, "0 = OpenMP default");
  count->add_option("--format", o.format)->check(formats);

  auto* series = app.add_subcommand("series", "coefficients of a catalog generating function");
  series->add_option("--gf", o.gf)->required();
  series->add_option("--terms", o.terms, "highest power of z (default 60)");
  series->add_option("--format", o.format)->check(formats);

  auto* verify = app.add_subcommand("verify", "compare a catalog entry with brute-force counts");
  verify->add_option("--gf", o.gf)->required();
  verify->add_option("--max-n", o.max_n)->required();
  verify->add_option("--threads", o.threads);

  auto* identities = app.add_subcommand("identities", "check the generating-function identities");
  identities->add_option("--terms", o.terms, "default 60");

  auto* sample = app.add_subcommand("sample", "uniform random class members");
  sample->add_option("--class", o.cls)->required()->check(CLI::IsMember({"fan", "flag"}));
  sample->add_option("--length", o.length)->required();
  sample->add_option("--count", o.count);
  sample->add_option("--seed", o.seed);
  sample->add_option("--threads", o.threads);
  sample->add_option("--format", o.format)->check(CLI::IsMember({"text", "json", "csv"}));

  auto* growth = app.add_subcommand("growth", "growth-rate estimate from exact coefficients");
  growth->add_option("--gf", o.gf)->required();
  growth->add_option("--terms", o.terms)->required();
  growth->add_option("--method", o.method)->check(CLI::IsMember({"raw", "aitken", "richardson"}));

  auto* asym = app.add_subcommand("asym", "singularity-analysis prediction against the exact coefficient");
  asym->add_option("--gf", o.gf)->required();
  asym->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
  asym->add_option("--order", o.order)->check(CLI::Range(0u, kMaxCorrectionOrder));
  asym->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  auto* ratio = app.add_subcommand("ratio", "[z^n] num / [z^n] den");
  ratio->add_option("--num", o.num)->required();
  ratio->add_option("--den", o.den)->required();
  ratio->add_option("--n", o.n)->required();

  auto* info = app.add_subcommand("info", "catalog listing, or metadata of one entry");
  info->add_option("--gf", o.gf);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
  }

  try {
    if (count->parsed()) return cmd_count(o, out);
    if (series->parsed()) return cmd_series(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (identities->parsed()) return cmd_identities(o, out);
    if (sample->parsed()) return cmd_sample(o, out);
    if (growth->parsed()) return cmd_growth(o, out);
    if (asym->parsed()) return cmd_asym(o, out);
    if (ratio->parsed()) return cmd_ratio(o, out);
    if (info->parsed()) return cmd_info(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace permclass::cli
