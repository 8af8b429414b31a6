// permtyp command line. Links only the C API: every computation goes through
// libpermtyp, the same surface other language bindings would use.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error,
// 3 exact enumeration infeasible.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permtyp.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitInfeasible = 3;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void die(int exit_code, const std::string& message) {
  throw CliError{exit_code, message};
}

void check(pt_status status) {
  if (status == PT_OK) return;
  const std::string message = pt_last_error();
  switch (status) {
    case PT_ERR_INFEASIBLE:
      die(kExitInfeasible, message);
    case PT_ERR_VERIFY:
      die(kExitVerifyFailure, message);
    default:
      die(kExitConfigError, message);
  }
}

std::string take_string(char* owned) {
  std::string out = owned == nullptr ? "" : owned;
  pt_string_free(owned);
  return out;
}

using PermPtr = std::unique_ptr<pt_perm, decltype(&pt_perm_free)>;
using DistPtr = std::unique_ptr<pt_dist, decltype(&pt_dist_free)>;

PermPtr wrap(pt_perm* p) { return PermPtr(p, &pt_perm_free); }
DistPtr wrap(pt_dist* d) { return DistPtr(d, &pt_dist_free); }

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      die(kExitConfigError, std::string(what) + ": bad integer '" + tok + "'");
    }
  }
  if (out.empty()) die(kExitConfigError, std::string(what) + ": empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      die(kExitConfigError, std::string(what) + ": bad number '" + tok + "'");
    }
  }
  if (out.empty()) die(kExitConfigError, std::string(what) + ": empty list");
  return out;
}

// "m=2,c=2,lengths=3,2" -> (m, lengths). c is optional and cross-checked.
void parse_cycle_type_spec(const std::string& text, int& m, std::vector<int>& lengths) {
  m = -1;
  int c = -1;
  lengths.clear();
  bool in_lengths = false;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) {
      const std::string key = tok.substr(0, eq);
      const std::string value = tok.substr(eq + 1);
      in_lengths = false;
      try {
        if (key == "m") {
          m = std::stoi(value);
        } else if (key == "c") {
          c = std::stoi(value);
        } else if (key == "lengths") {
          in_lengths = true;
          if (!value.empty()) lengths.push_back(std::stoi(value));
        } else {
          die(kExitConfigError, "cycle type: unknown key '" + key + "'");
        }
      } catch (const CliError&) {
        throw;
      } catch (const std::exception&) {
        die(kExitConfigError, "cycle type: bad value '" + value + "'");
      }
    } else if (in_lengths) {
      try {
        lengths.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        die(kExitConfigError, "cycle type: bad length '" + tok + "'");
      }
    } else {
      die(kExitConfigError, "cycle type: unexpected token '" + tok + "'");
    }
  }
  if (m < 0) die(kExitConfigError, "cycle type: missing m=");
  if (c >= 0 && c != static_cast<int>(lengths.size()))
    die(kExitConfigError, "cycle type: c=" + std::to_string(c) + " but " +
                              std::to_string(lengths.size()) + " lengths given");
}

// Distribution spec: "dsbs:<p>" inline or a JSON file path.
DistPtr load_distribution(const std::string& spec) {
  pt_dist* d = nullptr;
  if (spec.rfind("dsbs:", 0) == 0) {
    try {
      check(pt_dist_dsbs(std::stod(spec.substr(5)), &d));
    } catch (const CliError&) {
      throw;
    } catch (const std::exception&) {
      die(kExitConfigError, "distribution: bad dsbs parameter in '" + spec + "'");
    }
    return wrap(d);
  }
  std::ifstream file(spec);
  if (!file) die(kExitConfigError, "distribution: cannot open '" + spec + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  check(pt_dist_from_json(buffer.str().c_str(), &d));
  return wrap(d);
}

// Permutation spec: image:"5 1 4 3 2", cycles:"(1 2 5)(3 4)",
// standard:"m=..,lengths=..", random:"m=..,lengths=..;seed=..", or
// identity:<n>. A bare spec is treated as an image.
PermPtr load_permutation(const std::string& spec, int n) {
  pt_perm* p = nullptr;
  if (spec.rfind("image:", 0) == 0) {
    check(pt_perm_parse_image(spec.substr(6).c_str(), &p));
  } else if (spec.rfind("cycles:", 0) == 0) {
    check(pt_perm_parse_cycles(spec.substr(7).c_str(), n, &p));
  } else if (spec.rfind("identity:", 0) == 0) {
    check(pt_perm_identity(std::stoi(spec.substr(9)), &p));
  } else if (spec == "identity") {
    check(pt_perm_identity(n, &p));
  } else if (spec.rfind("standard:", 0) == 0 || spec.rfind("random:", 0) == 0) {
    const bool randomized = spec.rfind("random:", 0) == 0;
    std::string body = spec.substr(spec.find(':') + 1);
    std::uint64_t seed = 0;
    const auto semi = body.find(';');
    if (semi != std::string::npos) {
      const std::string tail = body.substr(semi + 1);
      if (tail.rfind("seed=", 0) != 0)
        die(kExitConfigError, "permutation: expected ';seed=...' in '" + spec + "'");
      seed = std::stoull(tail.substr(5));
      body = body.substr(0, semi);
    }
    int m = 0;
    std::vector<int> lengths;
    parse_cycle_type_spec(body, m, lengths);
    if (randomized)
      check(pt_perm_random_with_type(m, lengths.data(), static_cast<int>(lengths.size()),
                                     seed, &p));
    else
      check(pt_perm_standard(m, lengths.data(), static_cast<int>(lengths.size()), &p));
  } else {
    check(pt_perm_parse_image(spec.c_str(), &p));
  }
  if (n > 0 && pt_perm_n(p) != n) {
    pt_perm_free(p);
    die(kExitConfigError, "permutation '" + spec + "' lives on n=" +
                              std::to_string(pt_perm_n(p)) + ", expected n=" +
                              std::to_string(n));
  }
  return wrap(p);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) die(kExitConfigError, "cannot write '" + out_path + "'");
  file << text;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/* ---- perm --------------------------------------------------------------- */

void cmd_perm_decompose(const std::string& image, const std::string& cycles, int n,
                        bool as_json) {
  if (image.empty() == cycles.empty())
    die(kExitConfigError, "perm decompose: give exactly one of --image / --cycles");
  pt_perm* raw = nullptr;
  if (!image.empty())
    check(pt_perm_parse_image(image.c_str(), &raw));
  else
    check(pt_perm_parse_cycles(cycles.c_str(), n, &raw));
  PermPtr p = wrap(raw);

  int32_t m = 0, c = 0;
  check(pt_perm_cycle_type(p.get(), &m, &c, nullptr));
  std::vector<int32_t> lengths(static_cast<std::size_t>(c));
  check(pt_perm_cycle_type(p.get(), &m, &c, lengths.data()));
  char* text = nullptr;
  check(pt_perm_cycles_text(p.get(), &text));
  const std::string cycle_form = take_string(text);
  check(pt_perm_image_text(p.get(), &text));
  const std::string image_form = take_string(text);
  std::vector<int32_t> fixed(static_cast<std::size_t>(pt_perm_fixed_point_count(p.get())));
  if (!fixed.empty()) check(pt_perm_fixed_points(p.get(), fixed.data()));

  if (as_json) {
    json j;
    j["image"] = image_form;
    j["cycles"] = cycle_form;
    j["m"] = m;
    j["c"] = c;
    j["lengths"] = lengths;
    j["fixed_points"] = fixed;
    j["derangement"] = pt_perm_is_derangement(p.get()) != 0;
    std::cout << j.dump() << '\n';
    return;
  }
  std::cout << "image: " << image_form << '\n';
  if (c == 0) {
    std::cout << "identity; m=" << m << '\n';
  } else {
    std::cout << "cycles: " << cycle_form << '\n';
  }
  std::cout << "type: (m=" << m << ", c=" << c << ", lengths=[";
  for (std::size_t i = 0; i < lengths.size(); ++i)
    std::cout << (i ? "," : "") << lengths[i];
  std::cout << "])\n";
  std::cout << "fixed points:";
  for (int32_t f : fixed) std::cout << ' ' << f;
  if (fixed.empty()) std::cout << " none";
  std::cout << '\n';
  std::cout << "derangement: " << (pt_perm_is_derangement(p.get()) ? "yes" : "no") << '\n';
}

void cmd_perm_standard(const std::string& type_spec, bool as_json) {
  int m = 0;
  std::vector<int> lengths;
  parse_cycle_type_spec(type_spec, m, lengths);
  pt_perm* raw = nullptr;
  check(pt_perm_standard(m, lengths.data(), static_cast<int>(lengths.size()), &raw));
  PermPtr p = wrap(raw);
  char* text = nullptr;
  check(pt_perm_cycles_text(p.get(), &text));
  std::string cycle_form = take_string(text);
  check(pt_perm_image_text(p.get(), &text));
  const std::string image_form = take_string(text);
  // Spell out fixed points so the full standard form is visible.
  const int n = pt_perm_n(p.get());
  if (cycle_form == "()") cycle_form.clear();
  for (int i = n - m + 1; i <= n; ++i) cycle_form += "(" + std::to_string(i) + ")";

  if (as_json) {
    json j;
    j["cycles"] = cycle_form;
    j["image"] = image_form;
    j["n"] = n;
    std::cout << j.dump() << '\n';
    return;
  }
  std::cout << cycle_form << '\n';
  std::cout << "image: " << image_form << '\n';
}

/* ---- count -------------------------------------------------------------- */

void print_count_json(const std::string& payload) { std::cout << payload << '\n'; }

void require_exact_or_die(const std::string& payload) {
  if (json::parse(payload).contains("exact")) return;
  die(kExitInfeasible, "exact value not computed: enumeration exceeds the guard");
}

/* ---- bound -------------------------------------------------------------- */

void emit_bound_reports(const std::vector<std::string>& payloads, bool as_csv,
                        const std::string& out_path) {
  if (!as_csv) {
    json arr = json::array();
    for (const auto& payload : payloads) arr.push_back(json::parse(payload));
    write_output(arr.dump(2) + "\n", out_path);
    return;
  }
  std::ostringstream csv;
  csv << "# permtyp bound v1\n";
  csv << "kind,n,m,s,signature,eps,exponent_rate_bits,explicit_bound,vacuous\n";
  for (const auto& payload : payloads) {
    const json j = json::parse(payload);
    const json& params = j["params"];
    csv << j["kind"].get<std::string>() << ',' << params["n"].get<long long>() << ',';
    if (params.contains("m")) csv << params["m"].get<long long>();
    csv << ',';
    if (params.contains("s")) csv << params["s"].get<int>();
    csv << ',';
    if (params.contains("signature")) {
      csv << '"';
      const auto& sig = params["signature"];
      for (std::size_t i = 0; i < sig.size(); ++i)
        csv << (i ? "," : "") << sig[i].get<long long>();
      csv << '"';
    }
    csv << ',' << format_double(params["eps"].get<double>()) << ','
        << format_double(j["exponent_rate_bits"].get<double>()) << ','
        << format_double(j["explicit_bound"].get<double>()) << ','
        << (j["vacuous"].get<bool>() ? 1 : 0) << '\n';
  }
  write_output(csv.str(), out_path);
}

/* ---- simulate ----------------------------------------------------------- */

void cmd_simulate(const std::string& dist_spec, int n,
                  const std::vector<std::string>& perm_specs, const std::string& eps_list,
                  long long trials, std::uint64_t seed, int workers, bool as_json,
                  const std::string& out_path) {
  DistPtr dist = load_distribution(dist_spec);
  const int k = pt_dist_arity(dist.get());
  std::vector<PermPtr> perms;
  if (static_cast<int>(perm_specs.size()) == k - 1)
    perms.push_back(load_permutation("identity", n));  // pi_1 defaults to identity
  for (const auto& spec : perm_specs) perms.push_back(load_permutation(spec, n));
  if (static_cast<int>(perms.size()) != k)
    die(kExitConfigError, "simulate: need " + std::to_string(k) + " (or " +
                              std::to_string(k - 1) + ") --perm entries for this distribution");
  std::vector<const pt_perm*> handles;
  for (const auto& p : perms) handles.push_back(p.get());

  std::vector<std::string> payloads;
  for (double eps : parse_double_list(eps_list, "--eps")) {
    char* out = nullptr;
    check(pt_simulate(dist.get(), handles.data(), k, n, eps, trials, seed, workers, &out));
    payloads.push_back(take_string(out));
  }

  if (as_json) {
    json arr = json::array();
    for (const auto& payload : payloads) arr.push_back(json::parse(payload));
    write_output(arr.dump(2) + "\n", out_path);
    return;
  }
  std::ostringstream csv;
  csv << "# permtyp simulate v1\n";
  csv << "n,k,eps,trials,seed,workers,p_hat,stderr,exact,bound\n";
  for (const auto& payload : payloads) {
    const json j = json::parse(payload);
    csv << n << ',' << k << ',' << format_double(j["bound"]["params"]["eps"].get<double>())
        << ',' << trials << ',' << seed << ',' << workers << ','
        << format_double(j["p_hat"].get<double>()) << ','
        << format_double(j["stderr"].get<double>()) << ',';
    if (j.contains("exact")) csv << format_double(j["exact"].get<double>());
    csv << ',' << format_double(j["bound"]["explicit_bound"].get<double>()) << '\n';
  }
  write_output(csv.str(), out_path);
}

/* ---- verify ------------------------------------------------------------- */

int cmd_verify_prop1(const std::string& dist_spec, int n, double eps, std::uint64_t seed) {
  DistPtr dist = load_distribution(dist_spec);
  char* out = nullptr;
  const pt_status status = pt_verify_prop1(dist.get(), n, eps, seed, &out);
  if (status != PT_OK && status != PT_ERR_VERIFY) check(status);
  const json j = json::parse(take_string(out));
  std::cout << (j["pass"].get<bool>() ? "PASS" : "FAIL") << ", max discrepancy "
            << format_double(j["max_discrepancy"].get<double>()) << " (tolerance "
            << format_double(j["tolerance"].get<double>()) << ", " << j["classes"]
            << " cycle-type classes, " << j["perms_checked"] << " permutations)\n";
  std::cout << j.dump() << '\n';
  return j["pass"].get<bool>() ? kExitOk : kExitVerifyFailure;
}

int cmd_verify_bounds(const std::string& suite, const std::string& out_path) {
  if (suite != "default")
    die(kExitConfigError, "verify bounds: unknown suite '" + suite + "'");
  char* out = nullptr;
  const pt_status status = pt_verify_bounds_default(&out);
  if (status != PT_OK && status != PT_ERR_VERIFY) check(status);
  const std::string csv = take_string(out);
  write_output(csv, out_path);
  if (status == PT_ERR_VERIFY) {
    std::cerr << "FAIL: " << pt_last_error() << '\n';
    return kExitVerifyFailure;
  }
  std::cerr << "PASS: zero violations\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permutation typicality toolkit"};
  app.require_subcommand(1);

  // perm
  auto* perm = app.add_subcommand("perm", "permutation algebra");
  perm->require_subcommand(1);
  std::string opt_image, opt_cycles, opt_type;
  int opt_n = 0;
  bool opt_json = false;
  auto* decompose = perm->add_subcommand("decompose", "cycle decomposition and type");
  decompose->add_option("--image", opt_image, "image notation, e.g. \"5 1 4 3 2\"");
  decompose->add_option("--cycles", opt_cycles, "cycle notation, e.g. \"(1 2 5)(3 4)\"");
  decompose->add_option("--n", opt_n, "domain size for cycle notation (default: max element)");
  decompose->add_flag("--json", opt_json, "emit JSON");
  auto* standard = perm->add_subcommand("standard", "build the standard permutation of a cycle type");
  standard->add_option("--type", opt_type, "cycle type, e.g. \"m=2,c=2,lengths=3,2\"")->required();
  standard->add_flag("--json", opt_json, "emit JSON");

  // count
  auto* count = app.add_subcommand("count", "exact counts and bounds");
  count->require_subcommand(1);
  long long opt_count_n = 0, opt_count_m = 0;
  int opt_count_k = 0;
  std::string opt_sig;
  bool opt_rates = false, opt_require_exact = false, opt_list_partitions = false;
  auto* cfixed = count->add_subcommand("fixed", "permutations with exactly m fixed points");
  cfixed->add_option("--n", opt_count_n)->required();
  cfixed->add_option("--m", opt_count_m)->required();
  cfixed->add_flag("--rates", opt_rates, "add the normalized log-count rate");
  auto* ckfold = count->add_subcommand("kfold", "k-fold derangement count bounds");
  ckfold->add_option("--n", opt_count_n)->required();
  ckfold->add_option("--k", opt_count_k)->required();
  ckfold->add_flag("--require-exact", opt_require_exact,
                   "fail (exit 3) when enumeration is infeasible");
  auto* cbell = count->add_subcommand("bell", "Bell permutation vector count bounds");
  cbell->add_option("--n", opt_count_n)->required();
  cbell->add_option("--k", opt_count_k)->required();
  cbell->add_option("--sig", opt_sig, "signature, e.g. \"4,0\"");
  cbell->add_flag("--rates", opt_rates, "add the normalized log-count rates");
  cbell->add_flag("--require-exact", opt_require_exact,
                  "fail (exit 3) when enumeration is infeasible");
  cbell->add_flag("--list-partitions", opt_list_partitions,
                  "print the canonical partition order for k and exit");

  // bound
  auto* bound = app.add_subcommand("bound", "typicality probability bounds");
  bound->require_subcommand(1);
  std::string opt_dist, opt_ns = "0", opt_ms, opt_ss, opt_eps = "0", opt_out;
  bool opt_csv = false;
  const auto add_bound_common = [&](CLI::App* cmd, bool with_m, bool with_s, bool with_sig) {
    cmd->add_option("--dist", opt_dist, "distribution: JSON file or dsbs:<p>")->required();
    cmd->add_option("--n", opt_ns, "comma list of sequence lengths")->required();
    if (with_m) cmd->add_option("--m", opt_ms, "comma list of fixed-point counts")->required();
    if (with_s) cmd->add_option("--s", opt_ss, "comma list of cycle-length caps")->required();
    if (with_sig) cmd->add_option("--sig", opt_sig, "Bell signature, e.g. \"0,0,0,0,4\"")->required();
    cmd->add_option("--eps", opt_eps, "comma list of typicality tolerances")->required();
    cmd->add_flag("--csv", opt_csv, "emit CSV instead of JSON");
    cmd->add_option("--out", opt_out, "write to file instead of stdout");
  };
  add_bound_common(bound->add_subcommand("thm1", "pair bound over fixed-point counts"), true,
                   false, false);
  add_bound_common(bound->add_subcommand("lemma4", "single-cycle derangement bound"), false,
                   false, false);
  add_bound_common(bound->add_subcommand("lemma5", "short-cycle derangement bound"), false,
                   true, false);
  add_bound_common(bound->add_subcommand("thm2", "collection bound for a Bell signature"),
                   false, false, true);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo typicality estimation");
  std::vector<std::string> opt_perms;
  long long opt_trials = 100000;
  std::uint64_t opt_seed = 0;
  int opt_sim_n = 0, opt_workers = 0;
  simulate->add_option("--dist", opt_dist, "distribution: JSON file or dsbs:<p>")->required();
  simulate->add_option("--n", opt_sim_n, "sequence length")->required();
  simulate
      ->add_option("--perm", opt_perms,
                   "permutation spec (repeatable): image:\"..\", cycles:\"(..)\", "
                   "standard:m=..,lengths=.., random:m=..,lengths=..;seed=.., identity. "
                   "With one entry fewer than the arity, pi_1 = identity is prepended.")
      ->required();
  simulate->add_option("--eps", opt_eps, "comma list of typicality tolerances")->required();
  simulate->add_option("--trials", opt_trials, "Monte Carlo trials (default 100000)");
  simulate->add_option("--seed", opt_seed, "RNG seed (default 0, echoed in output)");
  simulate->add_option("--workers", opt_workers, "worker threads (0 = auto; result identical)");
  simulate->add_flag("--json", opt_json, "emit EstimateReport JSON instead of CSV");
  simulate->add_option("--out", opt_out, "write to file instead of stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "exactness and soundness suites");
  verify->require_subcommand(1);
  double opt_verify_eps = 0.1;
  int opt_verify_n = 4;
  std::uint64_t opt_verify_seed = 0x5eed;
  std::string opt_suite = "default";
  auto* vprop1 = verify->add_subcommand("prop1", "permutation-invariance exactness checks");
  vprop1->add_option("--dist", opt_dist, "pair distribution: JSON file or dsbs:<p>")->required();
  vprop1->add_option("--n", opt_verify_n, "sequence length (enumeration must be feasible)");
  vprop1->add_option("--eps", opt_verify_eps, "typicality tolerance");
  vprop1->add_option("--seed", opt_verify_seed, "seed for the sampled checks (echoed)");
  auto* vbounds = verify->add_subcommand("bounds", "bound soundness sweep");
  vbounds->add_option("--suite", opt_suite, "sweep suite (default)");
  vbounds->add_option("--out", opt_out, "write the CSV to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (decompose->parsed()) {
      cmd_perm_decompose(opt_image, opt_cycles, opt_n, opt_json);
    } else if (standard->parsed()) {
      cmd_perm_standard(opt_type, opt_json);
    } else if (cfixed->parsed()) {
      char* out = nullptr;
      check(pt_count_fixed(opt_count_n, opt_count_m, opt_rates ? 1 : 0, &out));
      print_count_json(take_string(out));
    } else if (ckfold->parsed()) {
      char* out = nullptr;
      check(pt_count_kfold(static_cast<int>(opt_count_n), opt_count_k, &out));
      const std::string payload = take_string(out);
      if (opt_require_exact) require_exact_or_die(payload);
      print_count_json(payload);
    } else if (cbell->parsed()) {
      if (opt_list_partitions) {
        char* out = nullptr;
        check(pt_partitions_text(opt_count_k, &out));
        std::cout << take_string(out);
        return kExitOk;
      }
      if (opt_sig.empty()) die(kExitConfigError, "count bell: --sig is required");
      const std::vector<std::int64_t> sig = parse_int_list(opt_sig, "--sig");
      char* out = nullptr;
      check(pt_count_bell(static_cast<int>(opt_count_n), opt_count_k, sig.data(),
                          static_cast<int>(sig.size()), opt_rates ? 1 : 0, &out));
      const std::string payload = take_string(out);
      if (opt_require_exact) require_exact_or_die(payload);
      print_count_json(payload);
    } else if (bound->parsed()) {
      DistPtr dist = load_distribution(opt_dist);
      std::vector<std::string> payloads;
      for (long long n : parse_int_list(opt_ns, "--n")) {
        for (double eps : parse_double_list(opt_eps, "--eps")) {
          char* out = nullptr;
          if (bound->get_subcommand("thm1")->parsed()) {
            for (long long m : parse_int_list(opt_ms, "--m")) {
              check(pt_bound_thm1(dist.get(), n, m, eps, &out));
              payloads.push_back(take_string(out));
            }
          } else if (bound->get_subcommand("lemma4")->parsed()) {
            check(pt_bound_lemma4(dist.get(), n, eps, &out));
            payloads.push_back(take_string(out));
          } else if (bound->get_subcommand("lemma5")->parsed()) {
            for (long long s : parse_int_list(opt_ss, "--s")) {
              check(pt_bound_lemma5(dist.get(), n, static_cast<int>(s), eps, &out));
              payloads.push_back(take_string(out));
            }
          } else {
            const std::vector<std::int64_t> sig = parse_int_list(opt_sig, "--sig");
            check(pt_bound_thm2(dist.get(), n, sig.data(), static_cast<int>(sig.size()),
                                eps, &out));
            payloads.push_back(take_string(out));
          }
        }
      }
      emit_bound_reports(payloads, opt_csv, opt_out);
    } else if (simulate->parsed()) {
      cmd_simulate(opt_dist, opt_sim_n, opt_perms, opt_eps, opt_trials, opt_seed,
                   opt_workers, opt_json, opt_out);
    } else if (vprop1->parsed()) {
      return cmd_verify_prop1(opt_dist, opt_verify_n, opt_verify_eps, opt_verify_seed);
    } else if (vbounds->parsed()) {
      return cmd_verify_bounds(opt_suite, opt_out);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitOk;
}
