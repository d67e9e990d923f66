// Command-line front end: search, sieve, family, verify, cyclotomy,
// geometry and report workflows over the rigidpg library.
//
// Exit codes: 0 success, 1 negative mathematical finding (not a PDS,
// axiom violation, nothing found), 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rigidpg/oracle.hpp"
#include "rigidpg/params.hpp"
#include "rigidpg/report.hpp"
#include "rigidpg/sieve.hpp"

namespace {

using namespace rigidpg;

constexpr int kExitOk = 0;
constexpr int kExitNegativeFinding = 1;
constexpr int kExitUsage = 2;

std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.emplace_back(tok);
  return out;
}

// Rebuilds candidate rows from a search CSV (case,s,t,alpha,... header).
std::vector<CandidateRow> rows_from_csv(std::istream& in) {
  std::vector<CandidateRow> rows;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty input");
  if (line.rfind("case,s,t,alpha", 0) != 0)
    throw std::runtime_error("unrecognized header: " + line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> cols;
    std::string tok;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
    if (cols.size() < 4) throw std::runtime_error("short row: " + line);
    CandidateRow row;
    row.geometry.s = Integer(cols[1]);
    row.geometry.t = Integer(cols[2]);
    row.geometry.alpha = Integer(cols[3]);
    row.pds = derive_pds_params(row.geometry);
    if ((row.geometry.t + 1) % (row.geometry.s + 1) != 0)
      throw std::runtime_error("t+1 not a multiple of s+1 in row: " + line);
    row.x = (row.geometry.t + 1) / (row.geometry.s + 1);
    row.c = 0;
    for (Integer c = 1; c * (row.geometry.s + 1) <
                        (row.geometry.alpha + 1) * (row.geometry.alpha + 1);
         ++c) {
      auto x = solve_line_multiplier(row.geometry.s, row.geometry.alpha, c);
      if (x && *x == row.x) {
        row.c = c;
        break;
      }
    }
    if (row.c == 0) throw std::runtime_error("no multiplier witness c for row: " + line);
    row.v_factored = factorize(row.pds.v);
    rows.push_back(std::move(row));
  }
  return rows;
}

// s, t, alpha of a pg point graph recovered from (v,k,lambda,mu); nothing
// when the parameters are not of that shape.
struct PgShape {
  Integer s, t, alpha;
};

std::optional<PgShape> pg_shape(const PdsParams& p) {
  if (!p.delta) return std::nullopt;
  const Integer t1 = (*p.delta - p.beta) / 2;  // t + 1
  if ((*p.delta - p.beta) % 2 != 0 || t1 <= 0) return std::nullopt;
  if (p.k % t1 != 0) return std::nullopt;
  PgShape shape;
  shape.s = p.k / t1;
  shape.t = t1 - 1;
  shape.alpha = shape.s - (p.beta + *p.delta) / 2;
  if (shape.alpha < 1 || shape.alpha > std::min(shape.s, shape.t)) return std::nullopt;
  if (p.mu != shape.alpha * t1) return std::nullopt;
  return shape;
}

int run_search(unsigned alpha_min, unsigned alpha_max, const std::string& format,
               bool mls_as_code) {
  EnumerateOptions opts;
  opts.mls_as_code = mls_as_code;
  const auto rows = enumerate_candidates(alpha_min, alpha_max, opts);
  std::cout << render_search(rows, parse_format(format));
  return kExitOk;
}

int run_sieve(unsigned alpha_min, unsigned alpha_max, const std::string& input,
              const std::string& format, bool mls_as_code) {
  std::vector<CandidateRow> rows;
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open " + input);
    rows = rows_from_csv(in);
  } else {
    EnumerateOptions opts;
    opts.mls_as_code = mls_as_code;
    rows = enumerate_candidates(alpha_min, alpha_max, opts);
  }
  std::vector<CaseReport> reports;
  reports.reserve(rows.size());
  for (const auto& row : rows) reports.push_back(sieve_case(row));
  std::cout << render_sieve(reports, parse_format(format));
  return kExitOk;
}

int run_family(unsigned n_max, const std::string& format) {
  std::vector<FamilyExclusion> rows;
  for (unsigned n = 2; n <= n_max; ++n) rows.push_back(family_exclude(n));
  std::cout << render_family(rows, parse_format(format));
  for (const auto& ex : rows)
    if (!ex.closed_form_match) {
      std::cerr << "closed-form mismatch at n=" << ex.instance.n << "\n";
      return kExitNegativeFinding;
    }
  return kExitOk;
}

int run_verify(const std::string& input) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open " + input);
  const PdsCandidate cand = read_pds_file(in);
  const VerifyResult res = verify_pds(cand);
  if (!res.ok()) {
    std::cout << "not a PDS: " << res.violation->reason << " (element index "
              << cand.group.index_of(res.violation->witness) << ", count "
              << res.violation->count << ")\n";
    return kExitNegativeFinding;
  }
  std::cout << '(' << res.params->v << ',' << res.params->k << ',' << res.params->lambda << ','
            << res.params->mu << ')' << " involution_free: "
            << (involution_free(cand) ? "true" : "false") << '\n';
  if (!res.inverse_closed) std::cout << "warning: not inverse-closed\n";
  return kExitOk;
}

int run_cyclotomy(std::uint32_t p, std::uint32_t f, std::uint32_t e,
                  const std::string& target_text, const std::string& out_path) {
  const auto target_values = parse_integer_list(target_text);
  if (target_values.size() != 4)
    throw CLI::ValidationError("--target", "expected v,k,lambda,mu");
  const PdsParams target = make_pds_params(target_values[0], target_values[1],
                                           target_values[2], target_values[3]);
  const CyclotomicClassSet classes = cyclotomic_classes(p, f, e);
  const auto found = find_cyclotomic_pds(classes, target);
  for (const auto& subset : found) {
    std::cout << '{';
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (i) std::cout << ',';
      std::cout << subset[i];
    }
    std::cout << "}\n";
  }
  if (found.empty()) {
    std::cout << "no class union matches\n";
    return kExitNegativeFinding;
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_pds_file(out, candidate_from_classes(classes, found.front()));
  }
  return kExitOk;
}

int run_geometry(const std::string& input, unsigned line_size, std::size_t limit) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open " + input);
  const PdsCandidate cand = read_pds_file(in);
  const VerifyResult res = verify_pds(cand);
  if (!res.ok()) {
    std::cout << "not a PDS: " << res.violation->reason << '\n';
    return kExitNegativeFinding;
  }
  if (line_size == 0) {
    const auto shape = pg_shape(*res.params);
    if (!shape)
      throw std::runtime_error(
          "parameters are not of partial-geometry shape; pass --line-size");
    line_size = static_cast<unsigned>(mpz_class(shape->s + 1).get_ui());
  }
  const auto partitions = partition_into_lines(cand, line_size, limit);
  if (partitions.empty()) {
    std::cout << "no partition of D into " << line_size - 1 << "-cliques\n";
    return kExitNegativeFinding;
  }
  for (const auto& blocks : partitions) {
    const Geometry geo = build_geometry(cand, blocks);
    const PgCheck check = check_pg_axioms(geo);
    if (!check.ok) continue;
    std::cout << "pg(" << check.s << ',' << check.t << ',' << check.alpha << ") "
              << (check.proper ? "proper" : "not proper") << ' '
              << (check_rigid(geo) ? "rigid" : "not rigid") << '\n';
    std::cout << "lines: " << geo.lines.size() << '\n';
    return kExitOk;
  }
  std::cout << "no clique partition yields a partial geometry (tried " << partitions.size()
            << ")\n";
  return kExitNegativeFinding;
}

int run_report(unsigned alpha_min, unsigned alpha_max, bool mls_as_code) {
  EnumerateOptions opts;
  opts.mls_as_code = mls_as_code;
  const auto rows = enumerate_candidates(alpha_min, alpha_max, opts);
  std::vector<CaseReport> reports;
  reports.reserve(rows.size());
  for (const auto& row : rows) reports.push_back(sieve_case(row));
  std::vector<FamilyExclusion> family;
  for (unsigned n = 2; n <= 9; ++n) family.push_back(family_exclude(n));
  std::cout << render_report(reports, family);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic search and nonexistence sieve for partial "
               "geometries of rigid type"};
  app.require_subcommand(1);

  unsigned alpha_min = 2, alpha_max = 1000;
  unsigned n_max = 9;
  unsigned line_size = 0;
  std::size_t limit = 32;
  std::uint32_t p = 3, f = 4, e = 16;
  std::string format = "csv";
  std::string input, out_path, target;
  bool mls_as_code = false;

  auto* search = app.add_subcommand("search", "enumerate surviving parameter sets");
  search->add_option("--alpha-min", alpha_min);
  search->add_option("--alpha-max", alpha_max);
  search->add_option("--format", format)->check(CLI::IsMember({"csv", "jsonl", "md"}));
  search->add_flag("--mls-as-code", mls_as_code,
                   "use the published search code's weaker MLS bound");

  auto* sieve = app.add_subcommand("sieve", "apply the T.1/T.2/T.3 exclusion pipeline");
  sieve->add_option("--alpha-min", alpha_min);
  sieve->add_option("--alpha-max", alpha_max);
  sieve->add_option("--input", input, "search CSV to sieve instead of an alpha range");
  sieve->add_option("--format", format)->check(CLI::IsMember({"csv", "jsonl", "md"}));
  sieve->add_flag("--mls-as-code", mls_as_code);

  auto* family = app.add_subcommand("family", "exclude the 2^n+1 parameter family");
  family->add_option("--n-max", n_max);
  family->add_option("--format", format)->check(CLI::IsMember({"csv", "jsonl", "md"}));

  auto* verify = app.add_subcommand("verify", "verify a PDS file by difference counting");
  verify->add_option("--input", input)->required();

  auto* cyclotomy = app.add_subcommand("cyclotomy", "search unions of cyclotomic classes");
  cyclotomy->add_option("--p", p);
  cyclotomy->add_option("--f", f);
  cyclotomy->add_option("--e", e);
  cyclotomy->add_option("--target", target, "v,k,lambda,mu")->required();
  cyclotomy->add_option("--out", out_path, "write the first found PDS to this file");

  auto* geometry = app.add_subcommand("geometry", "rebuild lines and check the pg axioms");
  geometry->add_option("--input", input)->required();
  geometry->add_option("--line-size", line_size, "points per line (default: inferred)");
  geometry->add_option("--limit", limit, "max clique partitions to try");

  auto* report = app.add_subcommand("report", "full markdown reproduction report");
  report->add_option("--alpha-min", alpha_min);
  report->add_option("--alpha-max", alpha_max);
  report->add_flag("--mls-as-code", mls_as_code);

  try {
    app.parse(argc, argv);
    if (search->parsed()) return run_search(alpha_min, alpha_max, format, mls_as_code);
    if (sieve->parsed()) return run_sieve(alpha_min, alpha_max, input, format, mls_as_code);
    if (family->parsed()) {
      if (n_max < 2) {
        std::cerr << "error: --n-max must be >= 2\n";
        return kExitUsage;
      }
      return run_family(n_max, format);
    }
    if (verify->parsed()) return run_verify(input);
    if (cyclotomy->parsed()) return run_cyclotomy(p, f, e, target, out_path);
    if (geometry->parsed()) return run_geometry(input, line_size, limit);
    if (report->parsed()) return run_report(alpha_min, alpha_max, mls_as_code);
    return kExitUsage;
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  }
}
