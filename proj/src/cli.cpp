#include "kfree/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "kfree/density.hpp"
#include "kfree/perron.hpp"
#include "kfree/sieve.hpp"
#include "kfree/variance.hpp"

namespace kfree {

namespace {

using Cell = std::variant<std::string, double, std::int64_t>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }

  bool any_fail() const {
    std::size_t status = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == "status") status = i;
    if (status == columns.size()) return false;
    for (const auto& r : rows)
      if (std::get<std::string>(r[status]) == "FAIL") return true;
    return false;
  }
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::string>)
              os << csv_field(v);
            else if constexpr (std::is_same_v<V, double>)
              os << format_double(v);
            else
              os << v;
          },
          row[i]);
    }
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i)
      std::visit([&](const auto& v) { obj[t.columns[i]] = v; }, row[i]);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

Cell big_cell(const BigInt& n) {
  if (n <= std::numeric_limits<std::int64_t>::max() && n >= std::numeric_limits<std::int64_t>::min())
    return n.convert_to<std::int64_t>();
  return n.str();
}

std::string status(bool pass) { return pass ? "PASS" : "FAIL"; }

std::vector<std::uint64_t> q_values(const RunConfig& c) {
  if (!c.q_list.empty()) return c.q_list;
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 1; q <= c.q_max; ++q) out.push_back(q);
  return out;
}

Table run_identities(const RunConfig& c) {
  Table t{{"check", "k", "q_count", "failed", "first_failure", "status"}, {}};
  const auto qs = q_values(c);
  struct Suite {
    const char* name;
    IdentityCheck (*fn)(std::uint64_t, unsigned);
  };
  const Suite suites[] = {{"sum_eta_sq", check_sum_eta_sq},
                          {"partition", check_partition},
                          {"class_collapse", check_class_collapse}};
  for (const auto& s : suites) {
    std::int64_t failed = 0;
    std::string first;
    for (std::uint64_t q : qs) {
      const IdentityCheck r = s.fn(q, c.k);
      if (!r.holds) {
        if (failed++ == 0) first = "q=" + std::to_string(q) + ": " + r.discrepancy.to_string();
      }
    }
    t.add({std::string(s.name), std::int64_t(c.k), std::int64_t(qs.size()), failed, first, status(failed == 0)});
  }
  return t;
}

Table run_consts(const RunConfig& c) {
  Table t{{"quantity", "q", "k", "value", "err", "status"}, {}};
  auto row = [&](const std::string& name, std::uint64_t q, const CertifiedReal& v, const std::string& st) {
    t.add({name, std::int64_t(q), std::int64_t(c.k), v.to_double(), v.err_double(), st});
  };
  row("zeta_k", 0, zeta_real(Real(c.k), c.precision), "INFO");
  row("zeta_at_minus_one_plus_1_over_k", 0, zeta_real(Real(-1) + Real(1) / c.k, c.precision), "INFO");
  const CertifiedReal ck = c_k(c.k, c.precision, c.prime_cutoff);
  row("C_k", 1, ck, status(ck.lower() > 0));
  row("gamma", 1, gamma_const(1, c.k, c.precision, c.prime_cutoff), "INFO");

  const std::vector<std::uint64_t> qs = c.q_list.empty() ? std::vector<std::uint64_t>{1, 2, 4, 6, 12, 30, 100}
                                                         : c.q_list;
  for (std::uint64_t q : qs) {
    const CertifiedReal f = f_k_of_q(q, c.k, c.precision, c.prime_cutoff);
    const CertifiedReal g = f_k_via_gamma(q, c.k, c.precision, c.prime_cutoff);
    row("f_k", q, f, "INFO");
    row("f_k_via_gamma", q, g, "INFO");
    const Real diff = abs(f.value() - g.value());
    t.add({std::string("two_path_residual"), std::int64_t(q), std::int64_t(c.k), diff.convert_to<double>(),
           (f.err() + g.err()).convert_to<double>(), status(diff <= Real(1e-9))});
  }
  return t;
}

std::string report_status(const VarianceReport& r) { return status(r.passed); }

Table run_scan(const RunConfig& c, bool full) {
  Table t;
  if (full)
    t.columns = {"x",     "q",     "k",     "V",      "V_exact",  "A",           "B",
                 "C",     "main",  "budget", "ratio", "J_truncated", "J_exact", "J_remainder_bound",
                 "status", "error"};
  else
    t.columns = {"x", "q", "k", "V", "main", "budget", "ratio", "status"};
  ScanOptions opt;
  opt.eps = c.eps;
  opt.digits = c.precision;
  opt.prime_cutoff = c.prime_cutoff;
  const auto qs = full && c.q_list.empty() ? std::vector<std::uint64_t>{c.q_max} : q_values(c);
  for (const VarianceReport& r : scan(c.x, qs, c.k, opt)) {
    const double v = r.error.empty() ? r.V_num.to_double() : std::nan("");
    const double m = r.error.empty() ? r.main.to_double() : std::nan("");
    if (full) {
      // J(x) truncated at D against q S(x/q), the exact weighted sum.
      double j_trunc = std::nan(""), j_exact = std::nan(""), j_rem = std::nan("");
      bool j_ok = true;
      if (r.error.empty()) {
        const JTruncation j = j_truncated(BigRational(r.x), r.q, r.k, c.D);
        const CertifiedReal s = CertifiedReal::exact(long(r.q)) *
                                dirichlet_weighted_sum(Real(r.x) / Real(r.q), r.q, r.k);
        j_trunc = static_cast<double>(j.partial);
        j_exact = s.to_double();
        j_rem = j.remainder_bound;
        j_ok = abs(to_real(j.partial) - s.value()) <= Real(j.remainder_bound) + s.err();
      }
      t.add({std::int64_t(r.x), std::int64_t(r.q), std::int64_t(r.k), v, r.V_exact.to_string(), big_cell(r.A),
             r.B.to_string(), big_cell(r.C), m, r.budget, r.ratio, j_trunc, j_exact, j_rem,
             status(r.passed && j_ok), r.error});
    } else {
      t.add({std::int64_t(r.x), std::int64_t(r.q), std::int64_t(r.k), v, m, r.budget, r.ratio, report_status(r)});
    }
  }
  return t;
}

Table run_perron(const RunConfig& c) {
  Table t{{"Q", "T", "c", "integral", "imag", "weighted", "deviation", "bound", "quad_error", "status"}, {}};
  ContourSpec spec;
  spec.T = c.T;
  const PerronResult r = perron_integral(c.Q, spec);
  const double w = weighted_count(c.Q);
  const double dev = std::abs(r.value - w);
  const double bound = 10.0 * (1 + c.Q * c.Q / (c.T * c.T));
  t.add({c.Q, c.T, 1 + 1 / std::log(c.Q), r.value, r.imag, w, dev, bound, r.quad_error,
         status(r.converged && dev <= bound)});
  return t;
}

Table run_osc(const RunConfig& c) {
  Table t{{"L", "integral", "bound", "ratio", "quad_error", "converged", "status"}, {}};
  const double delta = c.delta > 0 ? c.delta : 1.0 / (2.0 * c.k);
  for (const OscRow& r : osc_diagnostic(c.T, c.Q, c.k, delta))
    t.add({r.L, r.integral, r.bound, r.ratio, r.quad_error, std::string(r.converged ? "yes" : "no"),
           std::string("INFO")});
  return t;
}

// sum_{d <= x^{1/k}} mu(d) floor(x / d^k)
std::int64_t legendre_count(std::uint64_t x, unsigned k, const std::vector<std::int8_t>& mu) {
  std::int64_t s = 0;
  for (std::uint64_t d = 1; d < mu.size(); ++d) {
    if (mu[d] == 0) continue;
    std::uint64_t dk = 1;
    bool over = false;
    for (unsigned i = 0; i < k && !over; ++i) {
      if (dk > x / d) over = true;
      dk *= d;
    }
    if (over || dk > x) continue;
    s += mu[d] * static_cast<std::int64_t>(x / dk);
  }
  return s;
}

constexpr std::uint64_t kSpotCheckLimit = 100'000'000;

Table run_sieve_count(const RunConfig& c) {
  Table t{{"check", "x", "k", "value", "failed", "status"}, {}};
  const std::uint64_t n = count_kfree(c.x, c.k);
  t.add({std::string("count_kfree"), std::int64_t(c.x), std::int64_t(c.k), std::int64_t(n), std::int64_t(0),
         std::string("INFO")});

  const std::uint64_t limit = std::min(c.x, kSpotCheckLimit);
  if (limit >= 1 && c.samples > 0) {
    const KfreeCounter counter(limit, c.k);
    const auto mu = moebius_table(integer_root(limit, c.k));
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<std::uint64_t> pick(1, limit);
    std::int64_t failed = 0;
    for (unsigned i = 0; i < c.samples; ++i) {
      const std::uint64_t y = pick(rng);
      if (static_cast<std::int64_t>(counter.count(y)) != legendre_count(y, c.k, mu)) ++failed;
    }
    t.add({std::string("legendre_spot_checks"), std::int64_t(limit), std::int64_t(c.k), std::int64_t(c.samples),
           failed, status(failed == 0)});
  }
  if (c.x <= kSpotCheckLimit) {
    const std::int64_t l = legendre_count(c.x, c.k, moebius_table(integer_root(c.x, c.k)));
    const bool same = l == static_cast<std::int64_t>(n);
    t.add({std::string("legendre_total"), std::int64_t(c.x), std::int64_t(c.k), l, std::int64_t(same ? 0 : 1),
           status(same)});
  }
  return t;
}

}  // namespace

std::uint64_t parse_count(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  if (text.find_first_not_of("0123456789") == std::string::npos) return std::stoull(text);
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("not a number: " + text);
  if (!(v >= 0) || v != std::floor(v) || v > 9007199254740992.0)
    throw std::invalid_argument("not an exact non-negative integer: " + text);
  return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> parse_count_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_count(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list: " + text);
  return out;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.threads > 0) omp_set_num_threads(c.threads);
  Table t;
  try {
    if (c.command == "identities")
      t = run_identities(c);
    else if (c.command == "consts")
      t = run_consts(c);
    else if (c.command == "variance")
      t = run_scan(c, true);
    else if (c.command == "scan")
      t = run_scan(c, false);
    else if (c.command == "perron")
      t = run_perron(c);
    else if (c.command == "diagnose-osc")
      t = run_osc(c);
    else if (c.command == "sieve-count")
      t = run_sieve_count(c);
    else {
      err << "unknown command: " << c.command << '\n';
      return kExitUsage;
    }
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) {
      err << "cannot open " << c.out << '\n';
      return kExitUsage;
    }
    sink = &file;
  }
  if (c.format == OutputFormat::json)
    write_json(t, *sink);
  else
    write_csv(t, *sink);
  return t.any_fail() ? kExitFail : kExitOk;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-free numbers in arithmetic progressions: identities, constants, variance scans"};
  RunConfig c;
  std::string x_text, q_text, q_max_text, P_text, D_text, format = "csv";
  app.add_option("command", c.command, "identities | consts | variance | scan | perron | diagnose-osc | sieve-count")
      ->required()
      ->check(CLI::IsMember({"identities", "consts", "variance", "scan", "perron", "diagnose-osc", "sieve-count"}));
  app.add_option("--k", c.k, "power k >= 2")->check(CLI::Range(2u, 64u));
  app.add_option("--x", x_text, "cutoff x (scientific notation accepted)");
  app.add_option("--q,--q-list", q_text, "modulus or comma-separated moduli");
  app.add_option("--q-max", q_max_text, "largest modulus when no list is given");
  app.add_option("--precision", c.precision, "decimal digits")->check(CLI::Range(1u, kMaxPrecisionDigits));
  app.add_option("--P", P_text, "prime cutoff for Euler products");
  app.add_option("--D", D_text, "truncation for double sums");
  app.add_option("--eps", c.eps, "epsilon in the error budget")->check(CLI::NonNegativeNumber);
  app.add_option("--T", c.T, "Perron height, or the range L for diagnose-osc");
  app.add_option("--Q", c.Q, "Perron cutoff (non-integer) or the twist Q for diagnose-osc");
  app.add_option("--delta", c.delta, "diagnose-osc offset; defaults to 1/(2k)");
  app.add_option("--out", c.out, "output file");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", c.threads, "OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", c.seed, "seed for randomized spot checks");
  app.add_option("--samples", c.samples, "number of sieve-count spot checks");

  try {
    app.parse(argc, argv);
    if (!x_text.empty()) c.x = parse_count(x_text);
    if (!q_text.empty()) c.q_list = parse_count_list(q_text);
    if (!q_max_text.empty()) c.q_max = parse_count(q_max_text);
    if (!P_text.empty()) c.prime_cutoff = parse_count(P_text);
    if (!D_text.empty()) c.D = parse_count(D_text);
    c.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }
  return run(c, out, err);
}

}  // namespace kfree
