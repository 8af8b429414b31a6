#include "permtyp.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <string>

#include <json.hpp>

#include "core/bounds.hpp"
#include "core/counting.hpp"
#include "core/distribution.hpp"
#include "core/montecarlo.hpp"
#include "core/partitions.hpp"
#include "core/permutation.hpp"
#include "core/typicality.hpp"

using nlohmann::json;

struct pt_perm {
  permtyp::Permutation value;
};

struct pt_dist {
  permtyp::JointDistribution value;
};

namespace {

thread_local std::string g_last_error;

pt_status fail(pt_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs fn, translating exceptions into statuses.
template <typename Fn>
pt_status guarded(Fn&& fn) {
  try {
    fn();
    return PT_OK;
  } catch (const permtyp::InfeasibleError& e) {
    return fail(PT_ERR_INFEASIBLE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PT_ERR_INVALID, e.what());
  } catch (const json::exception& e) {
    return fail(PT_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(PT_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

std::vector<permtyp::Permutation> collect_perms(const pt_perm* const* perms, int32_t k) {
  require(perms != nullptr && k >= 1, "permutation vector: null or empty");
  std::vector<permtyp::Permutation> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int32_t i = 0; i < k; ++i) {
    require(perms[i] != nullptr, "permutation vector: null entry");
    out.push_back(perms[i]->value);
  }
  return out;
}

json bigint_json(const permtyp::BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

double log10_big(const permtyp::BigInt& v) {
  return permtyp::log2_big(v) * std::log10(2.0);
}

json count_bounds_json(const permtyp::CountBounds& b) {
  json out;
  out["lower"] = bigint_json(b.lower);
  if (b.exact) out["exact"] = bigint_json(*b.exact);
  out["upper"] = bigint_json(b.upper);
  out["log10_lower"] = log10_big(b.lower);
  out["log10_upper"] = log10_big(b.upper);
  return out;
}

json bound_report_json(const permtyp::BoundReport& r) {
  json params;
  params["n"] = r.n;
  params["eps"] = r.eps;
  params["alphabet_sizes"] = r.alphabet_sizes;
  if (r.m >= 0) params["m"] = r.m;
  if (r.s > 0) params["s"] = r.s;
  if (!r.signature.empty()) params["signature"] = r.signature;
  json out;
  out["kind"] = r.kind;
  out["exponent_rate_bits"] = r.exponent_rate;
  out["explicit_bound"] = r.explicit_bound;
  out["polynomial_factor"] = std::exp2(r.log2_poly_factor);
  out["log2_polynomial_factor"] = r.log2_poly_factor;
  out["vacuous"] = r.vacuous;
  out["params"] = std::move(params);
  return out;
}

void flatten_probs(const json& node, const std::vector<int>& sizes, std::size_t depth,
                   std::vector<double>& out) {
  require(node.is_array(), "distribution json: probs nesting does not match alphabet_sizes");
  require(node.size() == static_cast<std::size_t>(sizes[depth]),
          "distribution json: probs nesting does not match alphabet_sizes");
  for (const auto& child : node) {
    if (depth + 1 == sizes.size()) {
      require(child.is_number(), "distribution json: probability cells must be numbers");
      out.push_back(child.get<double>());
    } else {
      flatten_probs(child, sizes, depth + 1, out);
    }
  }
}

json nest_probs(const permtyp::JointDistribution& d, std::size_t& cursor, std::size_t depth) {
  json node = json::array();
  const int size = d.alphabet_sizes()[depth];
  for (int i = 0; i < size; ++i) {
    if (depth + 1 == d.alphabet_sizes().size())
      node.push_back(d.prob_flat(cursor++));
    else
      node.push_back(nest_probs(d, cursor, depth + 1));
  }
  return node;
}

permtyp::BellSignature make_signature(int32_t k, const int64_t* sig, int32_t sig_len) {
  require(sig != nullptr && sig_len >= 1, "signature: null or empty");
  permtyp::BellSignature out;
  out.k = k;
  for (int32_t i = 0; i < sig_len; ++i) {
    require(sig[i] >= 0, "signature: counts must be non-negative");
    out.counts.push_back(sig[i]);
    out.n += sig[i];
  }
  return out;
}

}  // namespace

extern "C" {

const char* pt_last_error(void) { return g_last_error.c_str(); }

void pt_string_free(char* s) { std::free(s); }

/* ---- permutations ------------------------------------------------------ */

pt_status pt_perm_identity(int32_t n, pt_perm** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new pt_perm{permtyp::Permutation::identity(n)};
  });
}

pt_status pt_perm_from_image(const int32_t* image, int32_t n, pt_perm** out) {
  return guarded([&] {
    require(out != nullptr && image != nullptr && n >= 1, "bad arguments");
    std::vector<int> img(image, image + n);
    *out = new pt_perm{permtyp::Permutation(img)};
  });
}

pt_status pt_perm_parse_image(const char* text, pt_perm** out) {
  return guarded([&] {
    require(out != nullptr && text != nullptr, "bad arguments");
    *out = new pt_perm{permtyp::parse_image_text(text)};
  });
}

pt_status pt_perm_parse_cycles(const char* text, int32_t n, pt_perm** out) {
  return guarded([&] {
    require(out != nullptr && text != nullptr && n >= 0, "bad arguments");
    *out = new pt_perm{permtyp::parse_cycles_text(text, n)};
  });
}

pt_status pt_perm_standard(int32_t m, const int32_t* lengths, int32_t c, pt_perm** out) {
  return guarded([&] {
    require(out != nullptr && (c == 0 || lengths != nullptr) && c >= 0, "bad arguments");
    std::vector<int> lens(lengths, lengths + c);
    *out = new pt_perm{permtyp::standard_permutation(m, lens)};
  });
}

pt_status pt_perm_random_with_type(int32_t m, const int32_t* lengths, int32_t c,
                                   uint64_t seed, pt_perm** out) {
  return guarded([&] {
    require(out != nullptr && (c == 0 || lengths != nullptr) && c >= 0, "bad arguments");
    std::vector<int> lens(lengths, lengths + c);
    *out = new pt_perm{permtyp::random_with_cycle_type(m, lens, seed)};
  });
}

void pt_perm_free(pt_perm* p) { delete p; }

int32_t pt_perm_n(const pt_perm* p) { return p == nullptr ? 0 : p->value.n(); }

pt_status pt_perm_image(const pt_perm* p, int32_t* buf) {
  return guarded([&] {
    require(p != nullptr && buf != nullptr, "bad arguments");
    const auto image = p->value.image_one_based();
    std::copy(image.begin(), image.end(), buf);
  });
}

pt_status pt_perm_compose(const pt_perm* p, const pt_perm* q, pt_perm** out) {
  return guarded([&] {
    require(p != nullptr && q != nullptr && out != nullptr, "bad arguments");
    *out = new pt_perm{permtyp::compose(p->value, q->value)};
  });
}

pt_status pt_perm_inverse(const pt_perm* p, pt_perm** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "bad arguments");
    *out = new pt_perm{p->value.inverse()};
  });
}

pt_status pt_perm_apply(const pt_perm* p, const int32_t* in, int32_t* out) {
  return guarded([&] {
    require(p != nullptr && in != nullptr && out != nullptr, "bad arguments");
    const auto& raw = p->value.raw();
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = in[raw[i]];
  });
}

pt_status pt_perm_apply_inverse(const pt_perm* p, const int32_t* in, int32_t* out) {
  return guarded([&] {
    require(p != nullptr && in != nullptr && out != nullptr, "bad arguments");
    const auto& raw = p->value.raw();
    for (std::size_t i = 0; i < raw.size(); ++i) out[raw[i]] = in[i];
  });
}

pt_status pt_perm_cycle_type(const pt_perm* p, int32_t* m, int32_t* c, int32_t* lengths) {
  return guarded([&] {
    require(p != nullptr && m != nullptr && c != nullptr, "bad arguments");
    const permtyp::CycleType ct = permtyp::cycle_type(p->value);
    *m = ct.m;
    *c = ct.cycle_count();
    if (lengths != nullptr)
      std::copy(ct.lengths.begin(), ct.lengths.end(), lengths);
  });
}

pt_status pt_perm_cycles_text(const pt_perm* p, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "bad arguments");
    *out = copy_string(permtyp::cycles_text(p->value));
  });
}

pt_status pt_perm_image_text(const pt_perm* p, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "bad arguments");
    *out = copy_string(permtyp::image_text(p->value));
  });
}

int32_t pt_perm_fixed_point_count(const pt_perm* p) {
  return p == nullptr ? 0 : p->value.fixed_point_count();
}

pt_status pt_perm_fixed_points(const pt_perm* p, int32_t* buf) {
  return guarded([&] {
    require(p != nullptr && buf != nullptr, "bad arguments");
    const auto pts = p->value.fixed_points();
    std::copy(pts.begin(), pts.end(), buf);
  });
}

int32_t pt_perm_is_derangement(const pt_perm* p) {
  return p != nullptr && p->value.is_derangement() ? 1 : 0;
}

pt_status pt_perm_same_cycle_type(const pt_perm* p, const pt_perm* q, int32_t* out) {
  return guarded([&] {
    require(p != nullptr && q != nullptr && out != nullptr, "bad arguments");
    *out = permtyp::same_cycle_type(p->value, q->value) ? 1 : 0;
  });
}

/* ---- set partitions and Bell signatures -------------------------------- */

pt_status pt_partitions_text(int32_t k, char** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    std::string text;
    for (const auto& p : permtyp::enumerate_partitions(k)) {
      text += permtyp::partition_text(p);
      text += '\n';
    }
    *out = copy_string(text);
  });
}

pt_status pt_bell_number(int32_t k, char** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = copy_string(permtyp::bell_number(k).str());
  });
}

pt_status pt_bell_signature(const pt_perm* const* perms, int32_t k, char** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const auto pv = collect_perms(perms, k);
    *out = copy_string(permtyp::signature_text(permtyp::bell_signature(pv)));
  });
}

pt_status pt_is_kfold_derangement(const pt_perm* const* perms, int32_t k, int32_t* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = permtyp::is_kfold_derangement(collect_perms(perms, k)) ? 1 : 0;
  });
}

/* ---- distributions ------------------------------------------------------ */

pt_status pt_dist_from_json(const char* text, pt_dist** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "bad arguments");
    const json parsed = json::parse(text);
    require(parsed.contains("alphabet_sizes") && parsed.contains("probs"),
            "distribution json: needs alphabet_sizes and probs");
    const auto sizes = parsed["alphabet_sizes"].get<std::vector<int>>();
    require(!sizes.empty(), "distribution json: alphabet_sizes is empty");
    std::vector<double> probs;
    flatten_probs(parsed["probs"], sizes, 0, probs);
    *out = new pt_dist{permtyp::JointDistribution(sizes, std::move(probs))};
  });
}

pt_status pt_dist_to_json(const pt_dist* d, char** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "bad arguments");
    json j;
    j["alphabet_sizes"] = d->value.alphabet_sizes();
    std::size_t cursor = 0;
    j["probs"] = nest_probs(d->value, cursor, 0);
    *out = copy_string(j.dump());
  });
}

pt_status pt_dist_dsbs(double p, pt_dist** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new pt_dist{permtyp::JointDistribution::dsbs(p)};
  });
}

pt_status pt_dist_dsbs_exact(int64_t p_num, int64_t p_den, pt_dist** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new pt_dist{permtyp::JointDistribution::dsbs_exact(p_num, p_den)};
  });
}

void pt_dist_free(pt_dist* d) { delete d; }

int32_t pt_dist_arity(const pt_dist* d) { return d == nullptr ? 0 : d->value.arity(); }

pt_status pt_dist_mutual_information(const pt_dist* d, double* out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "bad arguments");
    *out = permtyp::mutual_information(d->value);
  });
}

pt_status pt_dist_kl(const pt_dist* p, const pt_dist* q, double* out) {
  return guarded([&] {
    require(p != nullptr && q != nullptr && out != nullptr, "bad arguments");
    *out = permtyp::kl_divergence(p->value, q->value);
  });
}

/* ---- counting ----------------------------------------------------------- */

pt_status pt_derangements(int64_t n, char** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = copy_string(permtyp::derangements(n).str());
  });
}

pt_status pt_count_fixed(int64_t n, int64_t m, int32_t with_rates, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null output");
    json j = count_bounds_json(permtyp::fixed_point_count_bounds(n, m));
    if (with_rates) {
      const double alpha = static_cast<double>(m) / static_cast<double>(n);
      json rate;
      rate["normalized_log"] = permtyp::normalized_log_fixed_count(n, m);
      rate["alpha"] = alpha;
      rate["limit"] = 1.0 - alpha;
      j["rate"] = std::move(rate);
    }
    *out_json = copy_string(j.dump());
  });
}

pt_status pt_count_kfold(int32_t n, int32_t k, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null output");
    *out_json = copy_string(count_bounds_json(permtyp::kfold_bounds(n, k)).dump());
  });
}

pt_status pt_count_bell(int32_t n, int32_t k, const int64_t* sig, int32_t sig_len,
                        int32_t with_rates, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null output");
    const permtyp::BellSignature signature = make_signature(k, sig, sig_len);
    require(signature.n == n, "signature counts must sum to n");
    json j = count_bounds_json(permtyp::bell_count_bounds(n, k, signature));
    if (with_rates) {
      const permtyp::RatePair rate = permtyp::normalized_log_bell_count(n, k, signature);
      json r;
      r["lower"] = rate.lower;
      r["upper"] = rate.upper;
      if (rate.exact) r["exact"] = *rate.exact;
      const permtyp::PartitionTable table(k);
      double limit = 0;
      for (std::size_t jdx = 0; jdx < table.size(); ++jdx)
        limit += static_cast<double>(table.at(jdx).block_count()) *
                 (static_cast<double>(signature.counts[jdx]) / static_cast<double>(n));
      r["limit"] = limit - 1.0;
      j["rate"] = std::move(r);
    }
    *out_json = copy_string(j.dump());
  });
}

/* ---- probability bounds -------------------------------------------------- */

pt_status pt_bound_thm1(const pt_dist* d, int64_t n, int64_t m, double eps,
                        char** out_json) {
  return guarded([&] {
    require(d != nullptr && out_json != nullptr, "bad arguments");
    *out_json = copy_string(bound_report_json(permtyp::theorem1_bound(n, m, d->value, eps)).dump());
  });
}

pt_status pt_bound_lemma4(const pt_dist* d, int64_t n, double eps, char** out_json) {
  return guarded([&] {
    require(d != nullptr && out_json != nullptr, "bad arguments");
    *out_json = copy_string(bound_report_json(permtyp::lemma4_bound(n, d->value, eps)).dump());
  });
}

pt_status pt_bound_lemma5(const pt_dist* d, int64_t n, int32_t s, double eps,
                          char** out_json) {
  return guarded([&] {
    require(d != nullptr && out_json != nullptr, "bad arguments");
    *out_json =
        copy_string(bound_report_json(permtyp::lemma5_bound(n, s, d->value, eps)).dump());
  });
}

pt_status pt_bound_thm2(const pt_dist* d, int64_t n, const int64_t* sig, int32_t sig_len,
                        double eps, char** out_json) {
  return guarded([&] {
    require(d != nullptr && out_json != nullptr, "bad arguments");
    const permtyp::BellSignature signature = make_signature(d->value.arity(), sig, sig_len);
    *out_json = copy_string(
        bound_report_json(permtyp::theorem2_bound(n, signature, d->value, eps)).dump());
  });
}

/* ---- estimation and verification ---------------------------------------- */

pt_status pt_exact_typicality_prob(const pt_dist* d, const pt_perm* const* perms,
                                   int32_t k, int32_t n, double eps, double* out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "bad arguments");
    *out = permtyp::exact_typicality_prob(d->value, collect_perms(perms, k), n, eps);
  });
}

pt_status pt_simulate(const pt_dist* d, const pt_perm* const* perms, int32_t k, int32_t n,
                      double eps, int64_t trials, uint64_t seed, int32_t workers,
                      char** out_json) {
  return guarded([&] {
    require(d != nullptr && out_json != nullptr, "bad arguments");
    permtyp::TrialConfig cfg{d->value, collect_perms(perms, k), n, eps, trials, seed};
    permtyp::EstimateReport report = permtyp::estimate_typicality_prob(cfg, workers);

    json j;
    j["p_hat"] = report.p_hat;
    j["stderr"] = report.std_err;
    j["trials"] = report.trials;
    j["seed"] = seed;

    if (permtyp::exact_enumeration_feasible(cfg.dist, cfg.n)) {
      j["exact"] = permtyp::exact_typicality_prob(cfg.dist, cfg.perms, cfg.n, cfg.eps, workers);
    } else {
      j["notice"] = "exact enumeration exceeds the outcome guard; Monte Carlo only";
    }

    if (k == 2) {
      const permtyp::Permutation composite = compose(cfg.perms[0].inverse(), cfg.perms[1]);
      j["bound"] = bound_report_json(
          permtyp::theorem1_bound(n, composite.fixed_point_count(), cfg.dist, eps));
    } else {
      j["bound"] = bound_report_json(
          permtyp::theorem2_bound(n, permtyp::bell_signature(cfg.perms), cfg.dist, eps));
    }
    *out_json = copy_string(j.dump());
  });
}

pt_status pt_verify_prop1(const pt_dist* d, int32_t n, double eps, uint64_t seed,
                          char** out_json) {
  pt_status worst = PT_OK;
  const pt_status status = guarded([&] {
    require(d != nullptr && out_json != nullptr, "bad arguments");
    const permtyp::Prop1Report report = permtyp::verify_proposition1(d->value, n, eps, seed);
    json j;
    j["n"] = report.n;
    j["eps"] = report.eps;
    j["tolerance"] = report.tolerance;
    j["max_discrepancy"] = report.max_discrepancy();
    j["parts"] = {{"same_permutation", report.max_same_perm},
                  {"cycle_type_classes", report.max_class_spread},
                  {"pair_reduction", report.max_reduction}};
    j["classes"] = report.classes;
    j["perms_checked"] = report.perms_checked;
    j["pass"] = report.pass;
    *out_json = copy_string(j.dump());
    if (!report.pass) worst = fail(PT_ERR_VERIFY, "proposition 1 discrepancy above tolerance");
  });
  return status != PT_OK ? status : worst;
}

pt_status pt_verify_bounds_default(char** out_csv) {
  pt_status worst = PT_OK;
  const pt_status status = guarded([&] {
    require(out_csv != nullptr, "null output");
    const permtyp::SweepReport report = permtyp::default_bound_sweep();
    *out_csv = copy_string(permtyp::sweep_csv(report));
    if (!report.pass)
      worst = fail(PT_ERR_VERIFY, std::to_string(report.violations) +
                                      " bound violation(s) in the default sweep");
  });
  return status != PT_OK ? status : worst;
}

}  // extern "C"
